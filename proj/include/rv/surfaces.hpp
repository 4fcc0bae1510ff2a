#pragma once

// Catalog hypersurfaces in the ball chart and in normal-form charts.
//   caps:   totally geodesic H^3 meeting S^3 in the latitude sphere {x4 = sin t}
//   M_eps:  the level sphere {r = eps}, r = 2(1-|x|)/(1+|x|)
//   cone:   {a = pi/4} in the Hopf normal form, the cone over the Clifford torus

#include <cmath>
#include <optional>

#include "rv/extrinsic.hpp"
#include "rv/hypersurface.hpp"
#include "rv/models.hpp"
#include "rv/quadrature.hpp"

namespace rv {

inline double ball_radius_of_eps(double eps) { return (2.0 - eps) / (2.0 + eps); }

// F > 0 on the north side X^+ (for t = 0 this is x4 > 0)
struct CapLevel {
  double t = 0.0;
  template <class T> T operator()(const Vec<T, 4>& x) const {
    T s2(0.0);
    for (const auto& c : x) s2 += c * c;
    return x[3] - 0.5 * std::sin(t) * (1.0 + s2);
  }
};

// the cap as a graph x4 = u(x1, x2, x3)
struct CapGraph {
  double t = 0.0;
  template <class T> Vec<T, 4> operator()(const Vec<T, 3>& y) const {
    double s = std::sin(t);
    T rho2 = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
    T u = s * (1.0 + rho2) / (1.0 + sqrt(1.0 - s * s * (1.0 + rho2)));
    return {y[0], y[1], y[2], u};
  }
};

inline auto cap_surface(double t) { return make_surface<4>(CapGraph{t}, CapLevel{t}); }

// F > 0 inside the ball of radius R
struct SphereLevel {
  double R = 1.0;
  template <class T> T operator()(const Vec<T, 4>& x) const { return R - ball_radius(x); }
};

// radius-R sphere in angles (psi, theta, phi); degenerate on the axis, used for densities
struct SphereAngles {
  double R = 1.0;
  template <class T> Vec<T, 4> operator()(const Vec<T, 3>& q) const {
    T sp = sin(q[0]), st = sin(q[1]);
    return {R * sp * st * cos(q[2]), R * sp * st * sin(q[2]), R * sp * cos(q[1]), R * cos(q[0])};
  }
};

// corner circle/sphere {|x| = R} n {F_t = 0}: x4 = z0, |x'| = rho0
struct CapCorner {
  double z0 = 0.0, rho0 = 1.0;
  template <class T> Vec<T, 4> operator()(const Vec<T, 2>& z) const {
    T st = sin(z[0]);
    return {rho0 * st * cos(z[1]), rho0 * st * sin(z[1]), rho0 * cos(z[0]), T(z0)};
  }
};

inline CapCorner cap_corner(double t, double R) {
  double z0 = 0.5 * std::sin(t) * (1.0 + R * R);
  double r2 = R * R - z0 * z0;
  if (!(r2 > 0.0)) throw OutOfDomain("cap does not meet the sphere");
  return {z0, std::sqrt(r2)};
}

// Clifford cone in the hyperbolic normal form over HopfS3, coordinates (r, a, phi1, phi2)
inline NormalForm<HopfS3> hopf_normal_form(bool compactified = false) {
  NormalForm<HopfS3> m;
  m.mode = NormalFormMode::Round;
  m.compactified = compactified;
  return m;
}
struct ConeEmbed {
  template <class T> Vec<T, 4> operator()(const Vec<T, 3>& q) const { return {q[0], T(kPi / 4.0), q[1], q[2]}; }
};
struct ConeLevel {
  template <class T> T operator()(const Vec<T, 4>& x) const { return x[1] - kPi / 4.0; }
};
inline auto clifford_cone() { return make_surface<4>(ConeEmbed{}, ConeLevel{}); }

// |L|^2 of the cone with respect to g_+, closed form 2 r^2 / (1 - r^2/4)^2
inline double clifford_cone_L2(double r) { return 2.0 * r * r / sqr(1.0 - r * r / 4.0); }

// For the north side of the cap with sin t = s, the normal-form radii r in [eps, 2] at
// colatitude psi lying in X^+. Returns false when that set is empty.
// X^+ = {cos psi (4 - r^2) > s (4 + r^2)}.
inline bool cap_radial_range(double s, double psi, double eps, double& lo, double& hi) {
  double c = std::cos(psi);
  lo = eps;
  hi = 2.0;
  if (s == 0.0) return c > 0.0;
  double den = c + s, num = c - s;
  if (den > 0.0) {
    if (num <= 0.0) return false;
    double rs = 2.0 * std::sqrt(num / den);
    hi = std::min(hi, rs);
  } else if (den < 0.0) {
    if (num < 0.0) lo = std::max(lo, 2.0 * std::sqrt(num / den));
  } else if (s > 0.0) {
    return false;
  }
  return hi > lo;
}

// colatitude where the cap meets {r = eps}: cos psi = s (4 + eps^2)/(4 - eps^2); pi/2 if s = 0
inline double cap_boundary_colatitude(double s, double eps) {
  double c = s * (4.0 + eps * eps) / (4.0 - eps * eps);
  if (c >= 1.0) return 0.0;
  if (c <= -1.0) return kPi;
  return std::acos(c);
}

// X^+ in (r, psi): psi < psi*(r) with cos psi* = s (4 + r^2)/(4 - r^2).
inline double cap_colatitude_at(double s, double r) {
  double c = s * (4.0 + r * r) / (4.0 - r * r);
  if (c >= 1.0) return 0.0;
  if (c <= -1.0) return kPi;
  return std::acos(c);
}

// radius where psi* reaches 0 (s > 0) or pi (s < 0); the inner range has a square-root
// endpoint there. Returns 2 when there is none.
inline double cap_singular_radius(double s) {
  if (s > 0.0) return 2.0 * std::sqrt((1.0 - s) / (1.0 + s));
  if (s < 0.0) return 2.0 * std::sqrt((1.0 + s) / (1.0 - s));
  return 2.0;
}

// int_{eps}^{2} dr int_0^{psi*(r)} dpsi f(r, psi), f summed by the caller over the
// remaining angles; f returns std::array<double, K>. Outer variable log r, panels graded
// toward the singular radius. Without a cap (s empty) the whole ball is integrated.
template <std::size_t K, class F>
std::array<double, K> integrate_cap_region(std::optional<double> s_opt, double eps, std::size_t n_r, int levels,
                                           std::size_t n_psi, const F& f) {
  auto gp = gauss_legendre(n_psi);
  auto gr = gauss_legendre(n_r);
  double s = s_opt.value_or(0.0);
  bool whole = !s_opt.has_value();
  std::array<CompensatedSum, K> acc;
  auto add_line = [&](double lr, double wlr) {
    double r = std::exp(lr);
    double ps = whole ? kPi : cap_colatitude_at(s, r);
    if (ps <= 0.0) return;
    for (std::size_t i = 0; i < gp.x.size(); ++i) {
      double psi = 0.5 * ps * (1.0 + gp.x[i]);
      auto v = f(r, psi);
      for (std::size_t k = 0; k < K; ++k) acc[k].add(wlr * r * 0.5 * ps * gp.w[i] * v[k]);
    }
  };
  // panels of [a, b] graded toward b (toward_b) or toward a
  auto panels = [&](double a, double b, int lev, bool toward_b) {
    std::vector<double> cuts{0.0};
    for (int k = 1; k <= lev; ++k) cuts.push_back(1.0 - std::ldexp(1.0, -k));
    cuts.push_back(1.0);
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
      double u0 = cuts[p], u1 = cuts[p + 1];
      double lo = toward_b ? a + (b - a) * u0 : b - (b - a) * u1;
      double hi = toward_b ? a + (b - a) * u1 : b - (b - a) * u0;
      for (std::size_t j = 0; j < gr.x.size(); ++j)
        add_line(0.5 * (lo + hi) + 0.5 * (hi - lo) * gr.x[j], 0.5 * (hi - lo) * gr.w[j]);
    }
  };
  double rs = whole ? 2.0 : cap_singular_radius(s);
  double a = std::log(eps), b = std::log(2.0);
  if (!(rs > eps && rs < 2.0)) {
    panels(a, b, 2, false);
  } else {
    double m = std::log(rs);
    panels(a, m, levels, true);
    if (s < 0.0) panels(m, b, levels, false);
  }
  std::array<double, K> out{};
  for (std::size_t k = 0; k < K; ++k) out[k] = acc[k].value();
  return out;
}

}  // namespace rv
