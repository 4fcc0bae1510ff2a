#include <boost/numeric/odeint.hpp>
#include <cmath>

#include "rv/curvature.hpp"
#include "rv/hypersurface.hpp"
#include "rv/models.hpp"
#include "rv/quadrature.hpp"
#include "rv/suite.hpp"
#include "rv/surfaces.hpp"

namespace rv {

namespace {

struct EquatorEmbed {
  template <class T> Vec<T, 4> operator()(const Vec<T, 3>& y) const { return {y[0], y[1], y[2], T(0.0)}; }
};
struct EquatorLevel {
  template <class T> T operator()(const Vec<T, 4>& x) const { return x[3]; }
};

// |L0|^2 at hyperbolic distance rho from the centre of the surface
double l0_sq_at(const std::string& surface, double rho) {
  if (surface == "equatorial") {
    HyperbolicBall hb;
    auto s = make_surface<4>(EquatorEmbed{}, EquatorLevel{});
    double R = std::tanh(0.5 * rho);
    auto sd = shape_data(hb, s, Vec<double, 3>{R * 0.6, R * 0.0, R * 0.8});
    return norm2_cov(sd.hi, sd.L0);
  }
  if (surface == "clifford") {
    auto nf = hopf_normal_form();
    auto s = clifford_cone();
    double r = std::min(1.9, 2.0 * std::exp(-rho));
    auto sd = shape_data(nf, s, Vec<double, 3>{r, 0.3, 1.1});
    return norm2_cov(sd.hi, sd.L0);
  }
  throw ConfigError("unknown Jacobi surface '" + surface + "'");
}

double full_l_sq_at(const std::string& surface, double rho) { return l0_sq_at(surface, rho); }  // minimal: L = L0

struct Node {
  double rho, u, du, d2u;
};

// radial Jacobi ODE u'' + 2 coth(rho) u' = (3 - |L|^2) u, u(0) = 1
std::vector<Node> radial_solve(const std::string& surface, double rho_start, double rho_max, double h) {
  namespace odeint = boost::numeric::odeint;
  using S = std::array<double, 2>;
  double k0 = 3.0 - full_l_sq_at(surface, 0.0);
  S st{1.0 + k0 * rho_start * rho_start / 6.0, k0 * rho_start / 3.0};
  auto rhs = [&](const S& s, S& ds, double rho) {
    double k = 3.0 - full_l_sq_at(surface, rho);
    ds[0] = s[1];
    ds[1] = k * s[0] - 2.0 / std::tanh(rho) * s[1];
  };
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<S>>(1e-13, 1e-13);
  std::vector<Node> out;
  double rho = rho_start;
  auto push = [&](double r, const S& s) {
    S d;
    rhs(s, d, r);
    out.push_back({r, s[0], s[1], d[1]});
  };
  push(rho, st);
  int n = int(std::ceil((rho_max - rho_start) / h));
  for (int i = 1; i <= n; ++i) {
    double next = rho_start + (rho_max - rho_start) * i / n;
    odeint::integrate_adaptive(stepper, rhs, st, rho, next, 1e-3);
    rho = next;
    if (!std::isfinite(st[0])) throw SolveFailure("radial Jacobi integration diverged");
    push(rho, st);
  }
  return out;
}

// C^2 quintic Hermite interpolant of the nodes, usable with dual numbers
struct RadialInterpolant {
  const std::vector<Node>* nodes;
  double scale = 1.0;
  template <class T> T at(const T& rho) const {
    const auto& v = *nodes;
    double r = value(rho);
    std::size_t i = 0;
    if (r <= v.front().rho) {
      i = 0;
    } else {
      double h0 = v[1].rho - v[0].rho;
      i = std::min(v.size() - 2, std::size_t((r - v.front().rho) / h0));
      while (i + 1 < v.size() - 1 && v[i + 1].rho < r) ++i;
      while (i > 0 && v[i].rho > r) --i;
    }
    const Node &a = v[i], &b = v[i + 1];
    double h = b.rho - a.rho;
    T s = (rho - a.rho) / h;
    T s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    T H0 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
    T H1 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
    T H2 = 0.5 * (s2 - 3.0 * s3 + 3.0 * s4 - s5);
    T H3 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;
    T H4 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
    T H5 = 0.5 * (s3 - 2.0 * s4 + s5);
    T p = a.u * H0 + h * a.du * H1 + h * h * a.d2u * H2 + b.u * H3 + h * b.du * H4 + h * h * b.d2u * H5;
    return scale * p;
  }
  // as a function on the Poincare 3-ball
  template <class T> T operator()(const Vec<T, 3>& x) const {
    T R = sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    return at(log((1.0 + R) / (1.0 - R)));
  }
};

}  // namespace

JacobiSolution jacobi_solve(const JacobiOptions& opt) {
  if (!(opt.rho_max > 2.0 && opt.rho_max <= 30.0)) throw ConfigError("rho_max must lie in (2, 30]");
  if (!(opt.rho_start > 0.0 && opt.rho_start < 0.1)) throw ConfigError("rho_start must lie in (0, 0.1)");
  if (!(opt.node_spacing > 1e-4 && opt.node_spacing <= 0.1)) throw ConfigError("node_spacing must lie in (1e-4, 0.1]");
  JacobiSolution sol;
  sol.surface = opt.surface;
  sol.boundary_value = opt.boundary_value;
  // uniqueness hypothesis |L0|^2 <= 3
  for (int i = 0; i <= 40; ++i) {
    double rho = opt.rho_max * i / 40.0;
    sol.max_L0_sq = std::max(sol.max_L0_sq, l0_sq_at(opt.surface, rho));
  }
  if (sol.max_L0_sq > 3.0) throw HypothesisViolated("|L0|^2 exceeds 3 on the surface; Jacobi solution not unique");
  if (opt.surface != "equatorial") throw ConfigError("radial Jacobi solver supports the equatorial surface only");

  auto nodes = radial_solve(opt.surface, opt.rho_start, opt.rho_max, opt.node_spacing);
  auto nodes2 = radial_solve(opt.surface, 2.0 * opt.rho_start, opt.rho_max, opt.node_spacing);
  // r f -> f~ at the outer end, r = 2 e^{-rho}
  const Node& last = nodes.back();
  sol.amplitude = opt.boundary_value / (2.0 * std::exp(-last.rho) * last.u);
  double amp2 = opt.boundary_value / (2.0 * std::exp(-nodes2.back().rho) * nodes2.back().u);
  RadialInterpolant fi{&nodes, sol.amplitude};
  RadialInterpolant fi2{&nodes2, amp2};
  for (std::size_t i = 0; i < nodes.size(); i += 20) {
    sol.rho.push_back(nodes[i].rho);
    sol.f.push_back(sol.amplitude * nodes[i].u);
  }
  double c = opt.boundary_value;
  for (const auto& n : nodes) {
    double f = sol.amplitude * n.u;
    sol.max_abs_f = std::max(sol.max_abs_f, std::abs(f));
    if (c != 0.0) sol.max_cosh_error = std::max(sol.max_cosh_error, std::abs(f - c * std::cosh(n.rho)) / (std::abs(c) * std::cosh(n.rho)));
  }
  for (double rho = 0.05; rho < opt.rho_max - 0.1; rho += 0.37) {
    double a = fi.at(rho), b = fi2.at(rho);
    double d = std::max(std::abs(a), 1e-300);
    sol.uniqueness_gap = std::max(sol.uniqueness_gap, c == 0.0 ? std::abs(a - b) : std::abs(a - b) / d);
  }
  // PDE residual with the kernel Laplacian of the hyperbolic 3-ball
  HyperbolicBall3 h3;
  for (double R : {0.1, 0.3, 0.5, 0.7, 0.85, 0.95}) {
    Vec<double, 3> x{R * 0.48, -R * 0.6, R * 0.64};
    double lap = laplace_beltrami(h3, fi, x);
    double f = fi(x);
    double k = 3.0 - full_l_sq_at(opt.surface, std::log((1.0 + R) / (1.0 - R)));
    double res = lap - k * f;
    sol.max_pde_residual = std::max(sol.max_pde_residual, c == 0.0 ? std::abs(res) : std::abs(res) / std::abs(f));
  }
  // boundary recovery on an eps-ladder
  std::vector<Rung> data;
  Ladder lad{0.2, 0.8, 12};
  for (double r : lad.epsilons()) data.push_back({r, r * fi.at(std::log(2.0 / r))});
  std::vector<BasisTerm> basis{{0.0, 0}, {2.0, 0}, {4.0, 0}};
  auto fit = fit_expansion(data, basis, 1e10, false);
  sol.boundary_limit = fit.coeff(0.0);
  sol.boundary_error = std::abs(sol.boundary_limit - c);
  if (c != 0.0) {
    // least-squares slope of log|r f - f~| against log r
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& d : data) {
      double e = std::abs(d.value - c);
      if (e <= 0.0) continue;
      double lx = std::log(d.eps), ly = std::log(e);
      sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly, ++n;
    }
    if (n >= 2) sol.remainder_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return sol;
}

LSizeCheck l_size_check(const std::string& surface) {
  LSizeCheck c;
  c.surface = surface;
  std::vector<Rung> data;
  Ladder lad{0.2, 0.8, 10};
  for (double r : lad.epsilons()) {
    double l2 = surface == "clifford" ? l0_sq_at("clifford", std::log(2.0 / r)) : l0_sq_at(surface, std::log(2.0 / r));
    c.r.push_back(r);
    c.ratio.push_back(l2 / (r * r));
    data.push_back({r, l2 / (r * r)});
  }
  std::vector<BasisTerm> basis{{0.0, 0}, {2.0, 0}, {4.0, 0}};
  c.limit = fit_expansion(data, basis, 1e10, false).coeff(0.0);
  return c;
}

namespace {

struct TorusEmbed {
  template <class T> Vec<T, 3> operator()(const Vec<T, 2>& z) const { return {T(kPi / 4.0), z[0], z[1]}; }
};
struct TorusLevel {
  template <class T> T operator()(const Vec<T, 3>& y) const { return y[0] - kPi / 4.0; }
};

}  // namespace

ConeBulkCheck cone_bulk_check() {
  ConeBulkCheck out;
  auto nf = hopf_normal_form();
  auto cone = clifford_cone();
  auto ftil = [](double phi1) { return 1.0 + 0.5 * std::cos(phi1); };
  const int nphi = 8;
  auto g = gauss_legendre(16);
  auto radial_density = [&](double r) {
    // |L|^2 / r * dv, with the phi1 integral of f~ by the trapezoid rule (periodic)
    CompensatedSum acc;
    for (int k = 0; k < nphi; ++k) {
      double p1 = 2.0 * kPi * k / nphi;
      Vec<double, 3> q{r, p1, 0.4};
      auto sd = shape_data(nf, cone, q);
      double dv = std::sqrt(determinant(sd.h));
      acc.add(2.0 * kPi / nphi * 2.0 * kPi * norm2_cov(sd.hi, sd.L) / r * dv * ftil(p1));
    }
    return acc.value();
  };
  std::vector<Rung> data;
  Ladder lad{0.2, 0.8, 12};
  for (double e : lad.epsilons()) {
    // log-r substitution, panels graded toward eps
    double a = std::log(e), b = std::log(2.0);
    CompensatedSum s;
    for (int p = 0; p < 6; ++p) {
      double lo = a + (b - a) * (p == 0 ? 0.0 : std::ldexp(1.0, p - 6)), hi = a + (b - a) * std::ldexp(1.0, p - 5);
      for (std::size_t j = 0; j < g.x.size(); ++j) {
        double lr = 0.5 * (lo + hi) + 0.5 * (hi - lo) * g.x[j];
        s.add(0.5 * (hi - lo) * g.w[j] * std::exp(lr) * radial_density(std::exp(lr)));
      }
    }
    data.push_back({e, s.value()});
  }
  out.fit = fit_expansion(data, surface_basis(false, 3));
  // oint |II|^2 f~ over the Clifford torus in the round S^3
  HopfS3 s3;
  auto torus = make_surface<3>(TorusEmbed{}, TorusLevel{});
  CompensatedSum t;
  for (int k = 0; k < nphi; ++k) {
    double p1 = 2.0 * kPi * k / nphi;
    auto sd = shape_data(s3, torus, Vec<double, 2>{p1, 0.4});
    t.add(2.0 * kPi / nphi * 2.0 * kPi * norm2_cov(sd.hi, sd.L) * std::sqrt(determinant(sd.h)) * ftil(p1));
  }
  out.leading_target = t.value();
  out.leading_rel_error = std::abs(out.fit.c2 / out.leading_target - 1.0);
  return out;
}

}  // namespace rv
