#pragma once

// Gauss-Legendre rules, tensor products over boxes, compensated sums.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "rv/errors.hpp"

namespace rv {

struct GaussRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// n-point rule, exact for polynomials of degree 2n-1. Nodes by Newton on P_n.
GaussRule gauss_legendre(std::size_t n);

// Neumaier compensated summation; order of additions is the caller's loop order
struct CompensatedSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double v) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      c += (sum - t) + v;
    else
      c += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

// composite rule on [a, b] with `panels` equal panels
template <class F> double integrate_1d(const F& f, double a, double b, std::size_t n, std::size_t panels = 1) {
  auto g = gauss_legendre(n);
  CompensatedSum s;
  double hw = (b - a) / double(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    double lo = a + hw * double(p);
    double half = 0.5 * hw, mid = lo + half;
    for (std::size_t i = 0; i < n; ++i) s.add(g.w[i] * half * f(mid + half * g.x[i]));
  }
  return s.value();
}

// composite rule on [a, b] with panels graded geometrically toward b
template <class F> double integrate_graded(const F& f, double a, double b, std::size_t n, int levels) {
  CompensatedSum s;
  double lo = a;
  for (int k = 1; k <= levels + 1; ++k) {
    double hi = (k <= levels) ? b - (b - a) * std::ldexp(1.0, -k) : b;
    s.add(integrate_1d(f, lo, hi, n));
    lo = hi;
  }
  return s.value();
}

template <std::size_t D> struct Box {
  std::array<double, D> lo{}, hi{};
  std::array<std::size_t, D> order{};
  std::array<std::size_t, D> panels{};
};

template <std::size_t D> Box<D> make_box(std::array<double, D> lo, std::array<double, D> hi, std::array<std::size_t, D> order) {
  Box<D> b{lo, hi, order, {}};
  b.panels.fill(1);
  return b;
}

// tensor-product composite Gauss rule; f takes std::array<double, D>
template <std::size_t D, class F> double integrate_box(const F& f, const Box<D>& box) {
  std::array<std::vector<double>, D> nodes, weights;
  for (std::size_t k = 0; k < D; ++k) {
    auto g = gauss_legendre(box.order[k]);
    std::size_t P = box.panels[k] == 0 ? 1 : box.panels[k];
    double hw = (box.hi[k] - box.lo[k]) / double(P);
    for (std::size_t p = 0; p < P; ++p) {
      double half = 0.5 * hw, mid = box.lo[k] + hw * double(p) + half;
      for (std::size_t i = 0; i < g.x.size(); ++i) {
        nodes[k].push_back(mid + half * g.x[i]);
        weights[k].push_back(half * g.w[i]);
      }
    }
  }
  CompensatedSum s;
  std::array<std::size_t, D> idx{};
  std::array<double, D> x{};
  for (;;) {
    double w = 1.0;
    for (std::size_t k = 0; k < D; ++k) {
      x[k] = nodes[k][idx[k]];
      w *= weights[k][idx[k]];
    }
    s.add(w * f(x));
    std::size_t k = D;
    while (k > 0) {
      --k;
      if (++idx[k] < nodes[k].size()) break;
      idx[k] = 0;
      if (k == 0) return s.value();
    }
    if (D == 0) return s.value();
  }
}

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // |I(n2) - I(n1)|
  std::vector<double> levels;
};

// Order refinement: evaluate at the given orders (scaled per axis) and take the last.
// Throws QuadratureDivergence when successive differences grow and exceed tol.
template <std::size_t D, class F>
QuadResult integrate_refined(const F& f, const Box<D>& base, const std::vector<double>& scales = {1.0, 1.5, 2.0},
                             double tol = 1e-6) {
  QuadResult r;
  for (double sc : scales) {
    Box<D> b = base;
    for (std::size_t k = 0; k < D; ++k) b.order[k] = std::size_t(std::lround(double(base.order[k]) * sc));
    r.levels.push_back(integrate_box(f, b));
  }
  std::size_t n = r.levels.size();
  r.value = r.levels.back();
  if (n >= 2) r.error = std::abs(r.levels[n - 1] - r.levels[n - 2]);
  if (n >= 3) {
    double e1 = std::abs(r.levels[n - 2] - r.levels[n - 3]);
    double scale = std::max(1.0, std::abs(r.value));
    if (r.error > e1 && r.error > tol * scale)
      throw QuadratureDivergence("order refinement does not contract");
    if (!std::isfinite(r.value)) throw QuadratureDivergence("non-finite integral");
  }
  return r;
}

}  // namespace rv
