#pragma once

// Codimension-2 corner where two faces meet. Faces are given by defining functions
// (F > 0 inside); the corner surface by a 2-parameter map into the ambient chart.
// Face order is fixed: N is the Y side, S the M side.

#include <cmath>

#include "rv/curvature.hpp"
#include "rv/hypersurface.hpp"

namespace rv {

inline constexpr double kDefaultAngleMargin = 1e-3;

template <class T> struct CornerData {
  T theta{};
  T cos_theta{};
  Vec<T, 4> Z{};
  std::array<Vec<T, 4>, 2> E{};
  Vec<T, 4> mu_N{}, mu_S{}, nu_N{}, nu_S{};
  Mat<T, 2> k{}, ki{};
  Mat<T, 2> II_N{}, II_S{}, II0_N{}, II0_S{};
  T eta_N{}, eta_S{};
  T K{};
  T H_N{}, H_S{};          // face mean curvatures at the corner
  T nuN_H_N{}, nuS_H_S{};  // nu_N(H_N), nu_S(H_S)
};

template <class T> T pairing(const Mat<T, 4>& g, const Vec<T, 4>& a, const Vec<T, 4>& b) { return dot(g, a, b); }

template <class T> Vec<T, 4> unit_tangent_part(const Mat<T, 4>& g, const Vec<T, 4>& a, const Vec<T, 4>& n) {
  // a - <a,n> n normalized
  T c = dot(g, a, n);
  Vec<T, 4> v;
  for (std::size_t i = 0; i < 4; ++i) v[i] = a[i] - c * n[i];
  T l = sqrt(dot(g, v, v));
  for (auto& x : v) x = x / l;
  return v;
}

// corner II with respect to the unit normal nu: <nu, d_a d_b Z + Gamma(e_a, e_b)>
template <class T>
Mat<T, 2> corner_II(const Mat<T, 4>& g, const Ten3<T, 4>& Gam, const std::array<Vec<T, 4>, 2>& E,
                    const std::array<std::array<Vec<T, 4>, 2>, 2>& D2, const Vec<T, 4>& nu) {
  Mat<T, 2> r{};
  auto nc = matvec(g, nu);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      T s(0.0);
      for (std::size_t k = 0; k < 4; ++k) {
        T acc = D2[a][b][k];
        for (std::size_t i = 0; i < 4; ++i)
          for (std::size_t j = 0; j < 4; ++j) acc += Gam[k][i][j] * E[a][i] * E[b][j];
        s += nc[k] * acc;
      }
      r[a][b] = s;
    }
  return r;
}

template <class M, class FN, class FS, class Zmap, class T>
CornerData<T> corner_data(const M& m, const FN& FNf, const FS& FSf, const Zmap& Z, const Vec<T, 2>& z,
                          double margin = kDefaultAngleMargin) {
  static_assert(M::dim == 4, "corners live in a 4-dimensional ambient");
  CornerData<T> cd;
  cd.Z = Z(z);
  auto J = jacobian(Z, z);
  auto D2 = hessian(Z, z);
  cd.E = {J[0], J[1]};
  maybe_check(m, cd.Z);
  auto g = m(cd.Z);
  auto Gam = christoffel(m, cd.Z);
  cd.mu_N = level_normal(m, FNf, cd.Z);
  cd.mu_S = level_normal(m, FSf, cd.Z);
  cd.cos_theta = -dot(g, cd.mu_N, cd.mu_S);
  double c = value(cd.cos_theta);
  if (!(std::abs(c) < std::cos(margin))) throw TangentialFaces("faces nearly tangent at the corner");
  cd.theta = acos(cd.cos_theta);
  cd.nu_N = unit_tangent_part(g, cd.mu_S, cd.mu_N);
  cd.nu_S = unit_tangent_part(g, cd.mu_N, cd.mu_S);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) cd.k[a][b] = dot(g, cd.E[a], cd.E[b]);
  cd.ki = inverse(cd.k);
  std::array<std::array<Vec<T, 4>, 2>, 2> D{};
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) D[a][b] = D2[a][b];
  cd.II_N = corner_II(g, Gam, cd.E, D, cd.nu_N);
  cd.II_S = corner_II(g, Gam, cd.E, D, cd.nu_S);
  cd.eta_N = trace(matmul(cd.ki, cd.II_N));
  cd.eta_S = trace(matmul(cd.ki, cd.II_S));
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      cd.II0_N[a][b] = cd.II_N[a][b] - 0.5 * cd.eta_N * cd.k[a][b];
      cd.II0_S[a][b] = cd.II_S[a][b] - 0.5 * cd.eta_S * cd.k[a][b];
    }
  Pullback<M, Zmap, 2> km{&m, &Z};
  cd.K = 0.5 * scalar_curvature(km, z);
  auto HN = [&m, &FNf](const auto& x) { return level_mean_curvature(m, FNf, x); };
  auto HS = [&m, &FSf](const auto& x) { return level_mean_curvature(m, FSf, x); };
  cd.H_N = HN(cd.Z);
  cd.H_S = HS(cd.Z);
  cd.nuN_H_N = directional(HN, cd.Z, cd.nu_N);
  cd.nuS_H_S = directional(HS, cd.Z, cd.nu_S);
  return cd;
}

template <class T> T g_curvature(const CornerData<T>& cd) {
  T ct = cos(cd.theta) / sin(cd.theta);
  T cs = 1.0 / sin(cd.theta);
  return 0.5 * ct * (norm2_cov(cd.ki, cd.II0_N) + norm2_cov(cd.ki, cd.II0_S)) - cs * inner_cov(cd.ki, cd.II0_N, cd.II0_S);
}

template <class T> T u_curvature(const CornerData<T>& cd) {
  T ct = cos(cd.theta) / sin(cd.theta);
  T cs = 1.0 / sin(cd.theta);
  return (kPi - cd.theta) * cd.K - 0.25 * ct * (cd.eta_N * cd.eta_N + cd.eta_S * cd.eta_S) +
         0.5 * cs * cd.eta_N * cd.eta_S - (cd.nuN_H_N + cd.nuS_H_S) / 3.0;
}

template <class T> struct P2Terms {
  T lap_k{};      // (theta - pi) Delta_k f
  T normal2{};    // nu_N mu_N f + nu_S mu_S f
  T cot_term{};   // cot(theta)(eta_N nu_N f + eta_S nu_S f)
  T csc_term{};   // -csc(theta)(eta_S nu_N f + eta_N nu_S f)
  T H_term{};     // (H_N nu_N f + H_S nu_S f)/3
  T total() const { return lap_k + normal2 + cot_term + csc_term + H_term; }
};

template <class M, class FN, class FS, class Zmap, class F, class T>
P2Terms<T> p2_terms(const M& m, const FN& FNf, const FS& FSf, const Zmap& Z, const F& f, const Vec<T, 2>& z,
                    double margin = kDefaultAngleMargin) {
  auto cd = corner_data(m, FNf, FSf, Z, z, margin);
  P2Terms<T> r;
  Pullback<M, Zmap, 2> km{&m, &Z};
  auto fz = [&Z, &f](const auto& zz) { return f(Z(zz)); };
  r.lap_k = (cd.theta - kPi) * laplace_beltrami(km, fz, z);
  auto muNf = [&m, &FNf, &f](const auto& x) { return directional(f, x, level_normal(m, FNf, x)); };
  auto muSf = [&m, &FSf, &f](const auto& x) { return directional(f, x, level_normal(m, FSf, x)); };
  r.normal2 = directional(muNf, cd.Z, cd.nu_N) + directional(muSf, cd.Z, cd.nu_S);
  T nNf = directional(f, cd.Z, cd.nu_N);
  T nSf = directional(f, cd.Z, cd.nu_S);
  T ct = cos(cd.theta) / sin(cd.theta);
  T cs = 1.0 / sin(cd.theta);
  r.cot_term = ct * (cd.eta_N * nNf + cd.eta_S * nSf);
  r.csc_term = -cs * (cd.eta_S * nNf + cd.eta_N * nSf);
  r.H_term = (cd.H_N * nNf + cd.H_S * nSf) / 3.0;
  return r;
}

template <class M, class FN, class FS, class Zmap, class F, class T>
T p2_apply(const M& m, const FN& FNf, const FS& FSf, const Zmap& Z, const F& f, const Vec<T, 2>& z,
           double margin = kDefaultAngleMargin) {
  return p2_terms(m, FNf, FSf, Z, f, z, margin).total();
}

// same corner with the faces exchanged
template <class T> CornerData<T> swapped(const CornerData<T>& cd) {
  CornerData<T> s = cd;
  std::swap(s.mu_N, s.mu_S);
  std::swap(s.nu_N, s.nu_S);
  std::swap(s.II_N, s.II_S);
  std::swap(s.II0_N, s.II0_S);
  std::swap(s.eta_N, s.eta_S);
  std::swap(s.H_N, s.H_S);
  std::swap(s.nuN_H_N, s.nuS_H_S);
  return s;
}

// Intersection {F_N = 0} n {F_S = 0} as a 2-parameter map: the two free axes are the
// parameters, the remaining two coordinates are solved for by Newton.
template <class FN, class FS> struct IntersectionChart {
  FN FNf;
  FS FSf;
  std::array<std::size_t, 2> free_axes{0, 1};
  std::array<std::size_t, 2> solve_axes{2, 3};
  Vec<double, 4> base{};
  template <class T> Vec<T, 4> operator()(const Vec<T, 2>& z) const {
    Vec<double, 4> xd = base;
    xd[free_axes[0]] = value(z[0]);
    xd[free_axes[1]] = value(z[1]);
    auto step = [this](auto& x) {
      using U = std::remove_cvref_t<decltype(x[0])>;
      U f1 = FNf(x), f2 = FSf(x);
      auto g1 = jacobian(FNf, x);
      auto g2 = jacobian(FSf, x);
      U a = g1[solve_axes[0]], b = g1[solve_axes[1]], c = g2[solve_axes[0]], d = g2[solve_axes[1]];
      U det = a * d - b * c;
      U dx0 = (d * f1 - b * f2) / det;
      U dx1 = (a * f2 - c * f1) / det;
      x[solve_axes[0]] = x[solve_axes[0]] - dx0;
      x[solve_axes[1]] = x[solve_axes[1]] - dx1;
      return std::abs(value(dx0)) + std::abs(value(dx1));
    };
    for (int it = 0; it < 60; ++it)
      if (step(xd) < 1e-15) break;
    Vec<T, 4> x;
    for (std::size_t i = 0; i < 4; ++i) x[i] = T(xd[i]);
    x[free_axes[0]] = z[0];
    x[free_axes[1]] = z[1];
    for (int it = 0; it < 5; ++it) step(x);
    return x;
  }
};

}  // namespace rv
