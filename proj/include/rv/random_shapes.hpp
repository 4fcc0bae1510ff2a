#pragma once

// Seeded random hypersurfaces and corners in 4D charts for the property suites.

#include <cstdint>
#include <random>

#include "rv/corner.hpp"
#include "rv/hypersurface.hpp"

namespace rv {

// graph x3 = u(x0, x1, x2), u = a sin(k.y + p) + quadratic
struct RandomGraphFn {
  double a = 0.1, p = 0.0;
  Vec<double, 3> k{}, lin{};
  Mat<double, 3> Q{};
  template <class T> T operator()(const Vec<T, 3>& y) const {
    T arg(p), s(0.0);
    for (std::size_t i = 0; i < 3; ++i) {
      arg += k[i] * y[i];
      s += lin[i] * y[i];
      for (std::size_t j = 0; j < 3; ++j) s += Q[i][j] * y[i] * y[j];
    }
    return a * sin(arg) + s;
  }
};
struct RandomGraphEmbed {
  RandomGraphFn u;
  template <class T> Vec<T, 4> operator()(const Vec<T, 3>& y) const { return {y[0], y[1], y[2], u(y)}; }
};
struct RandomGraphLevel {
  RandomGraphFn u;
  template <class T> T operator()(const Vec<T, 4>& x) const { return x[3] - u(Vec<T, 3>{x[0], x[1], x[2]}); }
};

inline RandomGraphFn random_graph_fn(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  RandomGraphFn f;
  f.a = 0.15 * U(rng);
  f.p = kPi * U(rng);
  for (std::size_t i = 0; i < 3; ++i) {
    f.k[i] = 1.5 * U(rng);
    f.lin[i] = 0.2 * U(rng);
    for (std::size_t j = i; j < 3; ++j) f.Q[i][j] = f.Q[j][i] = 0.1 * U(rng);
  }
  return f;
}

inline auto random_graph_surface(std::mt19937_64& rng) {
  auto u = random_graph_fn(rng);
  return make_surface<4>(RandomGraphEmbed{u}, RandomGraphLevel{u});
}

inline Vec<double, 3> random_point3(std::mt19937_64& rng, double w = 0.4) {
  std::uniform_real_distribution<double> U(-w, w);
  return {U(rng), U(rng), U(rng)};
}

// two transversal faces: F_N = x3 - u(x0, x1, x2), F_S = x2 - b x3 - v(x0, x1, x3)
struct RandomFaceN {
  RandomGraphFn u;
  template <class T> T operator()(const Vec<T, 4>& x) const { return x[3] - u(Vec<T, 3>{x[0], x[1], x[2]}); }
};
struct RandomFaceS {
  RandomGraphFn v;
  double b = 0.3;
  template <class T> T operator()(const Vec<T, 4>& x) const { return x[2] - b * x[3] - v(Vec<T, 3>{x[0], x[1], x[3]}); }
};

struct RandomCorner {
  RandomFaceN FN;
  RandomFaceS FS;
  IntersectionChart<RandomFaceN, RandomFaceS> Z;
  Vec<double, 2> z{};
};

inline RandomCorner random_corner(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  RandomCorner c;
  c.FN = RandomFaceN{random_graph_fn(rng)};
  c.FS = RandomFaceS{random_graph_fn(rng), 0.6 * U(rng)};
  c.Z = IntersectionChart<RandomFaceN, RandomFaceS>{c.FN, c.FS};
  c.z = {0.3 * U(rng), 0.3 * U(rng)};
  c.Z.base = {c.z[0], c.z[1], 0.0, 0.0};
  return c;
}

}  // namespace rv
