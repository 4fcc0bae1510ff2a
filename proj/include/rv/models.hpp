#pragma once

// Closed-form metrics. Each model is a small immutable struct with
//   static constexpr std::size_t dim;
//   template <class T> Mat<T, dim> operator()(const Vec<T, dim>&) const;
//   bool in_domain(const Vec<double, dim>&) const;

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "rv/curvature.hpp"
#include "rv/tensor.hpp"

namespace rv {

template <std::size_t N> struct Flat {
  static constexpr std::size_t dim = N;
  template <class T> Mat<T, N> operator()(const Vec<T, N>&) const { return identity<T, N>(); }
  bool in_domain(const Vec<double, N>&) const { return true; }
};

// 4|dx|^2/(1-|x|^2)^2 on the unit N-ball
template <std::size_t N> struct HyperbolicBallN {
  static constexpr std::size_t dim = N;
  template <class T> Mat<T, N> operator()(const Vec<T, N>& x) const {
    T s(0.0);
    for (const auto& c : x) s += c * c;
    T f = 4.0 / sqr(1.0 - s);
    return scale(identity<T, N>(), f);
  }
  bool in_domain(const Vec<double, N>& x) const {
    double s = 0;
    for (double c : x) s += c * c;
    return s < 1.0;
  }
};
using HyperbolicBall = HyperbolicBallN<4>;
using HyperbolicBall3 = HyperbolicBallN<3>;

// compactification r^2 g_+ of the ball, r = 2(1-|x|)/(1+|x|): 16|dx|^2/(1+|x|)^4
struct CompactifiedBall {
  static constexpr std::size_t dim = 4;
  template <class T> Mat<T, 4> operator()(const Vec<T, 4>& x) const {
    T s(0.0);
    for (const auto& c : x) s += c * c;
    T R = sqrt(s);
    return scale(identity<T, 4>(), T(16.0) / ipow(1.0 + R, 4));
  }
  bool in_domain(const Vec<double, 4>& x) const {
    double s = 0;
    for (double c : x) s += c * c;
    return s < 1.0;
  }
};

template <class T, std::size_t N> T ball_radius(const Vec<T, N>& x) {
  T s(0.0);
  for (const auto& c : x) s += c * c;
  return sqrt(s);
}

// geodesic defining function of the ball model for the round unit S^3 boundary metric
template <class T> T ball_defining_function(const Vec<T, 4>& x) {
  T R = ball_radius(x);
  return 2.0 * (1.0 - R) / (1.0 + R);
}

// round S^N of radius 1 in stereographic coordinates: 4|dx|^2/(1+|x|^2)^2
template <std::size_t N> struct SphereStereo {
  static constexpr std::size_t dim = N;
  template <class T> Mat<T, N> operator()(const Vec<T, N>& x) const {
    T s(0.0);
    for (const auto& c : x) s += c * c;
    return scale(identity<T, N>(), T(4.0) / sqr(1.0 + s));
  }
  bool in_domain(const Vec<double, N>&) const { return true; }
};

// round S^3 of radius a in (psi, theta, phi)
struct RoundS3 {
  static constexpr std::size_t dim = 3;
  double radius = 1.0;
  template <class T> Mat<T, 3> operator()(const Vec<T, 3>& y) const {
    auto g = zero_mat<T, 3>();
    T a2 = T(radius * radius);
    T s = sin(y[0]);
    g[0][0] = a2;
    g[1][1] = a2 * s * s;
    g[2][2] = a2 * s * s * sqr(sin(y[1]));
    return g;
  }
  bool in_domain(const Vec<double, 3>& y) const { return y[0] > 0 && y[0] < kPi && y[1] > 0 && y[1] < kPi; }
  // trace-free test tensor a sin^2 psi (dpsi^2 - 1/2 sin^2 psi dOmega^2)
  template <class T> Mat<T, 3> g3_shape(const Vec<T, 3>& y) const {
    auto g = zero_mat<T, 3>();
    T s2 = sqr(sin(y[0]));
    g[0][0] = s2;
    g[1][1] = -0.5 * s2 * s2;
    g[2][2] = -0.5 * s2 * s2 * sqr(sin(y[1]));
    return g;
  }
};

// round unit S^3 in Hopf coordinates (a, phi1, phi2): da^2 + cos^2 a dphi1^2 + sin^2 a dphi2^2
struct HopfS3 {
  static constexpr std::size_t dim = 3;
  template <class T> Mat<T, 3> operator()(const Vec<T, 3>& y) const {
    auto g = zero_mat<T, 3>();
    g[0][0] = T(1.0);
    g[1][1] = sqr(cos(y[0]));
    g[2][2] = sqr(sin(y[0]));
    return g;
  }
  bool in_domain(const Vec<double, 3>& y) const { return y[0] > 0 && y[0] < kPi / 2; }
};

// small smooth random perturbation of the identity, g_ij = d_ij + amp * sum of sines
template <std::size_t N> struct RandomMetric {
  static constexpr std::size_t dim = N;
  static constexpr int kModes = 3;
  double amp = 0.1;
  // coefficient c[i][j][m], wavevector k[m], phase p[m]
  std::array<std::array<std::array<double, kModes>, N>, N> c{};
  std::array<Vec<double, N>, kModes> k{};
  std::array<double, kModes> p{};
  Vec<double, N> center{};

  RandomMetric() = default;
  explicit RandomMetric(std::uint64_t seed, double amplitude = 0.1) : amp(amplitude) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i; j < N; ++j)
        for (int m = 0; m < kModes; ++m) {
          c[i][j][m] = u(rng);
          c[j][i][m] = c[i][j][m];
        }
    for (int m = 0; m < kModes; ++m) {
      for (std::size_t i = 0; i < N; ++i) k[m][i] = 1.5 * u(rng);
      p[m] = kPi * u(rng);
    }
  }
  template <class T> Mat<T, N> operator()(const Vec<T, N>& x) const {
    auto g = identity<T, N>();
    std::array<T, kModes> w;
    for (int m = 0; m < kModes; ++m) {
      T a(p[m]);
      for (std::size_t i = 0; i < N; ++i) a += k[m][i] * x[i];
      w[m] = sin(a);
    }
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        for (int m = 0; m < kModes; ++m) g[i][j] += (amp / double(N)) * c[i][j][m] * w[m];
    return g;
  }
  bool in_domain(const Vec<double, N>&) const { return true; }
};

// smooth random conformal exponent
template <std::size_t N> struct RandomOmega {
  static constexpr int kModes = 3;
  double amp = 0.3;
  std::array<double, kModes> a{};
  std::array<Vec<double, N>, kModes> k{};
  std::array<double, kModes> p{};
  RandomOmega() = default;
  explicit RandomOmega(std::uint64_t seed, double amplitude = 0.3) : amp(amplitude) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int m = 0; m < kModes; ++m) {
      a[m] = u(rng);
      for (std::size_t i = 0; i < N; ++i) k[m][i] = 1.2 * u(rng);
      p[m] = kPi * u(rng);
    }
  }
  template <class T> T operator()(const Vec<T, N>& x) const {
    T s(0.0);
    for (int m = 0; m < kModes; ++m) {
      T arg(p[m]);
      for (std::size_t i = 0; i < N; ++i) arg += k[m][i] * x[i];
      s += amp * a[m] * sin(arg);
    }
    return s;
  }
};

// Geodesic normal form (dr^2 + hbar_r)/r^2 on (0,2) x M, coordinates (r, y).
//   round mode:    hbar_r = (1 - r^2/4)^2 hbar              (hbar = round S^3 of radius a: uses P = h/(2a^2))
//   schouten mode: hbar_r = (h - r^2 P/2) h^-1 (h - r^2 P/2) with P the Schouten tensor of hbar
// plus an optional formal r^3 g3 term.
enum class NormalFormMode { Round, Schouten };

template <class B> struct NormalForm {
  static constexpr std::size_t dim = 4;
  B boundary{};
  NormalFormMode mode = NormalFormMode::Schouten;
  double g3_amp = 0.0;
  bool compactified = false;  // if true evaluate rbar-metric dr^2 + hbar_r instead of g_+
  double r_max = 2.0;
  bool einstein_boundary = true;  // boundary round (or conformally flat) so the closed form is exactly Einstein

  template <class T> Vec<T, 3> bpoint(const Vec<T, 4>& x) const { return {x[1], x[2], x[3]}; }

  template <class T> Mat<T, 3> hbar_r(const T& r, const Vec<T, 3>& y) const {
    auto h = boundary(y);
    Mat<T, 3> hr;
    if (mode == NormalFormMode::Round) {
      hr = scale(h, sqr(1.0 - r * r / 4.0));
    } else {
      auto P = schouten_3d(boundary, y);
      auto hi = inverse(h);
      Mat<T, 3> A;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) A[i][j] = h[i][j] - 0.5 * r * r * P[i][j];
      hr = matmul(matmul(A, hi), A);
    }
    if (g3_amp != 0.0) {
      if constexpr (requires { boundary.g3_shape(y); }) {
        auto g3 = boundary.g3_shape(y);
        T r3 = r * r * r * g3_amp;
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < 3; ++j) hr[i][j] += r3 * g3[i][j];
      } else {
        throw ConfigError("boundary metric has no g3 shape");
      }
    }
    return hr;
  }

  template <class T> Mat<T, 4> operator()(const Vec<T, 4>& x) const {
    auto hr = hbar_r(x[0], bpoint(x));
    auto g = zero_mat<T, 4>();
    g[0][0] = T(1.0);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) g[i + 1][j + 1] = hr[i][j];
    if (!compactified) g = scale(g, T(1.0) / (x[0] * x[0]));
    return g;
  }
  bool in_domain(const Vec<double, 4>& x) const {
    if (!(x[0] > 0.0 && x[0] < r_max)) return false;
    if constexpr (HasDomain<B>) return boundary.in_domain(bpoint(x));
    return true;
  }
  bool formal() const { return g3_amp != 0.0 || !einstein_boundary; }
};

// hyperbolic normal form over the round S^3 of the given radius
inline NormalForm<RoundS3> hyperbolic_normal_form(double round_radius = 1.0, double g3_amp = 0.0) {
  if (!(round_radius > 0.0)) throw ConfigError("round_radius must be positive");
  NormalForm<RoundS3> m;
  m.boundary = RoundS3{round_radius};
  m.mode = round_radius == 1.0 ? NormalFormMode::Round : NormalFormMode::Schouten;
  m.g3_amp = g3_amp;
  return m;
}

// normal-form chart (r, psi, theta, phi) -> ball chart, for the unit round boundary
template <class T> Vec<T, 4> nf_to_ball(const Vec<T, 4>& q) {
  T R = (2.0 - q[0]) / (2.0 + q[0]);
  T sp = sin(q[1]), st = sin(q[2]);
  return {R * sp * st * cos(q[3]), R * sp * st * sin(q[3]), R * sp * cos(q[2]), R * cos(q[1])};
}

// ball -> normal form
template <class T> Vec<T, 4> ball_to_nf(const Vec<T, 4>& x) {
  T R = ball_radius(x);
  T r = 2.0 * (1.0 - R) / (1.0 + R);
  T rho3 = sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  T psi = atan2(rho3, x[3]);
  T rho2 = sqrt(x[0] * x[0] + x[1] * x[1]);
  T th = atan2(rho2, x[2]);
  T ph = atan2(x[1], x[0]);
  return {r, psi, th, ph};
}

}  // namespace rv
