#pragma once

// Boundary curvature quantities of a hypersurface in a 4-manifold: C, the Chang-Qing
// L and T curvatures, and the third-order operator P3.

#include "rv/curvature.hpp"
#include "rv/hypersurface.hpp"

namespace rv {

template <class T> struct ExtrinsicTerms {
  T H{};
  T L0_ric_g{};   // L0^ab Ric_g(e_a, e_b)
  T L0_ric_h{};   // L0^ab Ric_h_ab
  T L0_sq{};      // |L0|^2
  T L0_cube{};    // tr L0^3
  T R_g{};
  T R_h{};
  T mu_R_g{};     // mu(R_g)
  T lap_H{};      // Delta_h H (only when requested)
};

template <class M, class S, class T>
ExtrinsicTerms<T> extrinsic_terms(const M& m, const S& s, const Vec<T, M::dim - 1>& q, bool with_third_order) {
  constexpr std::size_t N = M::dim;
  constexpr std::size_t P = N - 1;
  auto sd = shape_data(m, s, q);
  ExtrinsicTerms<T> r;
  r.H = sd.H;
  auto rs = ricci_scalar(m, sd.X);
  r.R_g = rs.scalar;
  auto ricg = tangential<T, N>(rs.ricci, sd.E);
  auto hm = induced_metric(m, s);
  auto rh = ricci_scalar(hm, q);
  r.R_h = rh.scalar;
  r.L0_ric_g = inner_cov(sd.hi, sd.L0, ricg);
  r.L0_ric_h = inner_cov(sd.hi, sd.L0, rh.ricci);
  r.L0_sq = norm2_cov(sd.hi, sd.L0);
  r.L0_cube = trace_cubed(sd.hi, sd.L0);
  if (with_third_order) {
    auto Rf = [&m](const auto& y) { return scalar_curvature(m, y); };
    r.mu_R_g = directional(Rf, sd.X, sd.mu);
    auto Hf = [&m, &s](const auto& qq) { return shape_data(m, s, qq).H; };
    r.lap_H = laplace_beltrami(hm, Hf, q);
  }
  (void)P;
  return r;
}

// The printed C carries L0.Ric_g with coefficient 1, which is not conformally invariant
// off Einstein ambients; with coefficient 1/2 it equals L/2 + tr L0^3/6 identically.
// Both agree whenever L0.Ric_g = 0, in particular on every Einstein ambient.
template <class T> T c_from(const ExtrinsicTerms<T>& e) {
  return 0.5 * e.L0_ric_g - e.L0_ric_h + e.H * e.L0_sq / 3.0 - e.L0_cube / 3.0;
}
template <class T> T c_printed_from(const ExtrinsicTerms<T>& e) {
  return e.L0_ric_g - e.L0_ric_h + e.H * e.L0_sq / 3.0 - e.L0_cube / 3.0;
}
template <class T> T chang_qing_from(const ExtrinsicTerms<T>& e) {
  return e.L0_ric_g - 2.0 * e.L0_ric_h + 2.0 / 3.0 * e.H * e.L0_sq - e.L0_cube;
}
template <class T> T t_from(const ExtrinsicTerms<T>& e) {
  return -e.mu_R_g / 12.0 - e.L0_ric_g + e.L0_ric_h - 0.5 * e.H * e.L0_sq + 2.0 / 3.0 * e.L0_cube + e.R_h * e.H / 6.0 -
         e.H * e.H * e.H / 27.0 - e.lap_H / 3.0;
}

template <class M, class S, class T> T c_invariant(const M& m, const S& s, const Vec<T, M::dim - 1>& q) {
  static_assert(M::dim == 4, "c_invariant needs a 4-dimensional ambient");
  return c_from(extrinsic_terms(m, s, q, false));
}
template <class M, class S, class T> T c_invariant_printed(const M& m, const S& s, const Vec<T, M::dim - 1>& q) {
  return c_printed_from(extrinsic_terms(m, s, q, false));
}
template <class M, class S, class T> T chang_qing_L(const M& m, const S& s, const Vec<T, M::dim - 1>& q) {
  static_assert(M::dim == 4, "chang_qing_L needs a 4-dimensional ambient");
  return chang_qing_from(extrinsic_terms(m, s, q, false));
}
template <class M, class S, class T> T t_curvature(const M& m, const S& s, const Vec<T, M::dim - 1>& q) {
  static_assert(M::dim == 4, "t_curvature needs a 4-dimensional ambient");
  return t_from(extrinsic_terms(m, s, q, true));
}

// Pieces of P3 f. total() has the signs forced by the transformation of T (checked
// against e^{3w} T~ - T); printed() keeps the coefficients as written, which disagree
// in the Delta_h mu(f), H Delta_h f, L0 Hessian and grad H terms.
template <class T> struct P3Terms {
  T mu_lap_g{};   // mu(Delta_g f)
  T lap_h_mu{};   // Delta_h mu(f)
  T H_lap_h{};    // H Delta_h f
  T L0_hess{};    // L0^ab nabla_a nabla_b f, intrinsic Hessian
  T gradH{};      // <grad H, grad f>_h
  T zeroth{};     // (R_g/6 - R_h/2 - |L0|^2/2 + H^2/3) mu(f)
  T total() const { return 0.5 * mu_lap_g + lap_h_mu - H_lap_h / 3.0 + L0_hess + gradH / 3.0 + zeroth; }
  T printed() const { return 0.5 * mu_lap_g - lap_h_mu - H_lap_h - L0_hess - gradH / 3.0 + zeroth; }
};

template <class M, class S, class F, class T>
P3Terms<T> p3_terms(const M& m, const S& s, const F& f, const Vec<T, M::dim - 1>& q) {
  constexpr std::size_t N = M::dim;
  constexpr std::size_t P = N - 1;
  static_assert(N == 4, "p3 needs a 4-dimensional ambient");
  auto sd = shape_data(m, s, q);
  auto hm = induced_metric(m, s);
  auto e = extrinsic_terms(m, s, q, false);
  P3Terms<T> r;
  auto lapg = [&m, &f](const auto& y) { return laplace_beltrami(m, f, y); };
  r.mu_lap_g = directional(lapg, sd.X, sd.mu);
  auto muf = [&m, &s, &f](const auto& qq) {
    auto sq = shape_data(m, s, qq);
    return directional(f, sq.X, sq.mu);
  };
  r.lap_h_mu = laplace_beltrami(hm, muf, q);
  auto fY = [&s, &f](const auto& qq) { return f(s.embed(qq)); };
  r.H_lap_h = sd.H * laplace_beltrami(hm, fY, q);
  auto hess = hessian_cov(hm, fY, q);
  r.L0_hess = inner_cov(sd.hi, sd.L0, hess);
  auto Hf = [&m, &s](const auto& qq) { return shape_data(m, s, qq).H; };
  auto dH = jacobian(Hf, q);
  auto df = jacobian(fY, q);
  T gh(0.0);
  for (std::size_t a = 0; a < P; ++a)
    for (std::size_t b = 0; b < P; ++b) gh += sd.hi[a][b] * dH[a] * df[b];
  r.gradH = gh;
  T mf = directional(f, sd.X, sd.mu);
  r.zeroth = (e.R_g / 6.0 - 0.5 * e.R_h - 0.5 * e.L0_sq + e.H * e.H / 3.0) * mf;
  return r;
}

template <class M, class S, class F, class T> T p3_apply(const M& m, const S& s, const F& f, const Vec<T, M::dim - 1>& q) {
  return p3_terms(m, s, f, q).total();
}

// Level set {F = 0} near a point, as a graph over the coordinate hyperplane orthogonal
// to the axis with the largest gradient component.
template <std::size_t N, class F> struct LevelGraph {
  F level;
  std::size_t axis = 0;
  Vec<double, N> base{};
  template <class T> Vec<T, N> operator()(const Vec<T, N - 1>& y) const {
    // Newton in double, then a few steps in T to propagate derivatives
    Vec<double, N> xd{};
    {
      std::size_t c = 0;
      for (std::size_t i = 0; i < N; ++i) xd[i] = (i == axis) ? base[i] : value(y[c++]);
    }
    for (int it = 0; it < 60; ++it) {
      auto fv = level(xd);
      auto d = partial(level, xd, axis);
      double step = fv / d;
      xd[axis] -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(xd[axis]))) break;
    }
    Vec<T, N> x{};
    std::size_t c = 0;
    for (std::size_t i = 0; i < N; ++i) x[i] = (i == axis) ? T(xd[i]) : y[c++];
    for (int it = 0; it < 5; ++it) {
      auto fv = level(x);
      auto d = partial(level, x, axis);
      x[axis] = x[axis] - fv / d;
    }
    return x;
  }
  Vec<double, N - 1> param_of(const Vec<double, N>& x) const {
    Vec<double, N - 1> y{};
    std::size_t c = 0;
    for (std::size_t i = 0; i < N; ++i)
      if (i != axis) y[c++] = x[i];
    return y;
  }
};

template <std::size_t N, class F> auto level_to_graph(const F& level, const Vec<double, N>& x0) {
  auto g = jacobian(level, x0);
  std::size_t ax = 0;
  for (std::size_t i = 1; i < N; ++i)
    if (std::abs(g[i]) > std::abs(g[ax])) ax = i;
  if (g[ax] == 0.0) throw DegenerateImmersion("level set has vanishing gradient");
  LevelGraph<N, F> lg{level, ax, x0};
  return make_surface<N>(lg, level);
}

}  // namespace rv
