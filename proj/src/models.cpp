#include <boost/numeric/odeint.hpp>
#include <cmath>

#include "rv/catalog.hpp"
#include "rv/curvature.hpp"
#include "rv/hypersurface.hpp"
#include "rv/models.hpp"
#include "rv/quadrature.hpp"
#include "rv/surfaces.hpp"

namespace rv {

namespace {

// latitude sphere psi = psi0 inside the round S^3 chart, north side positive
struct LatitudeEmbed {
  double psi0;
  template <class T> Vec<T, 3> operator()(const Vec<T, 2>& z) const { return {T(psi0), z[0], z[1]}; }
};
struct LatitudeSide {
  double psi0;
  template <class T> T operator()(const Vec<T, 3>& y) const { return psi0 - y[0]; }
};

}  // namespace

CapMember cap_family(double t, bool check_samples) {
  if (!(std::abs(t) < 1.3)) throw ConfigError("cap latitude |t| must be below 1.3");
  CapMember c;
  c.t = t;
  c.sigma_colatitude = 0.5 * kPi - t;
  c.sigma_radius = std::cos(t);
  c.eta_M_closed = 2.0 * std::tan(t);
  c.cap_radius = t == 0.0 ? INFINITY : std::abs(1.0 / std::tan(t));
  c.vertex_height = std::tan(0.5 * t);
  RoundS3 s3;
  auto lat = make_surface<3>(LatitudeEmbed{c.sigma_colatitude}, LatitudeSide{c.sigma_colatitude});
  auto sd = shape_data(s3, lat, Vec<double, 2>{1.1, 0.4});
  c.eta_M = sd.H;
  // areas by quadrature
  auto area_density = [&](double th, double ph) {
    Pullback<RoundS3, LatitudeEmbed, 2> pb{&s3, &lat.embed};
    return std::sqrt(determinant(pb(Vec<double, 2>{th, ph})));
  };
  auto g = gauss_legendre(12);
  CompensatedSum a, v;
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    double th = 0.5 * kPi * (1.0 + g.x[i]);
    a.add(2.0 * kPi * 0.5 * kPi * g.w[i] * area_density(th, 0.3));
  }
  c.sigma_area = a.value();
  auto g24 = gauss_legendre(24);
  for (std::size_t i = 0; i < g24.x.size(); ++i) {
    double psi = 0.5 * c.sigma_colatitude * (1.0 + g24.x[i]);
    for (std::size_t j = 0; j < g.x.size(); ++j) {
      double th = 0.5 * kPi * (1.0 + g.x[j]);
      double dv = std::sqrt(determinant(s3(Vec<double, 3>{psi, th, 0.2})));
      v.add(0.5 * c.sigma_colatitude * g24.w[i] * 0.5 * kPi * g.w[j] * 2.0 * kPi * dv);
    }
  }
  c.vol_M_plus = v.value();
  if (check_samples) {
    HyperbolicBall hb;
    auto cap = cap_surface(t);
    for (double a1 : {-0.4, 0.1, 0.5})
      for (double a2 : {-0.3, 0.2}) {
        Vec<double, 3> y{a1, a2, 0.5 * a1 * a2};
        auto s = shape_data(hb, cap, y);
        c.max_abs_H = std::max(c.max_abs_H, std::abs(s.H));
        for (auto& row : s.L)
          for (double e : row) c.max_abs_L = std::max(c.max_abs_L, std::abs(e));
      }
  }
  return c;
}

namespace {

template <class B> V2Result v2_for(const NormalForm<B>& nf, const B& b, const Vec<double, 3>& y) {
  V2Result r;
  auto h = b(y);
  double dh = determinant(h);
  std::vector<Rung> data;
  Ladder lad{0.2, 0.8, 14};
  for (double e : lad.epsilons()) data.push_back({e, std::sqrt(determinant(nf.hbar_r(e, y)) / dh)});
  std::vector<BasisTerm> basis{{0.0, 0}, {2.0, 0}, {3.0, 0}, {4.0, 0}, {6.0, 0}};
  auto f = fit_expansion(data, basis, 1e10, false);
  r.fitted = f.coeff(2.0);
  r.condition = f.condition;
  auto P = schouten_3d(b, y);
  r.direct = -0.5 * trace(matmul(inverse(h), P));
  r.target = -scalar_curvature(b, y) / 8.0;
  return r;
}

}  // namespace

V2Result volume_coefficient_v2(const V2Options& opt, const std::vector<double>& yv) {
  if (yv.size() != 3) throw ConfigError("boundary point needs 3 coordinates");
  Vec<double, 3> y{yv[0], yv[1], yv[2]};
  if (opt.boundary == "round") {
    auto nf = hyperbolic_normal_form(opt.round_radius);
    return v2_for(nf, nf.boundary, y);
  }
  if (opt.boundary == "random") {
    NormalForm<RandomMetric<3>> nf;
    nf.boundary = RandomMetric<3>(opt.seed, opt.amp);
    nf.mode = NormalFormMode::Schouten;
    nf.einstein_boundary = false;
    return v2_for(nf, nf.boundary, y);
  }
  throw ConfigError("unknown boundary '" + opt.boundary + "'");
}

namespace {

using State6 = std::array<double, 6>;

// geodesic flow of the round S^3 chart, state (x, v)
void geodesic_rhs(const State6& s, State6& ds) {
  RoundS3 s3;
  Vec<double, 3> x{s[0], s[1], s[2]};
  auto G = christoffel(s3, x);
  for (std::size_t k = 0; k < 3; ++k) {
    ds[k] = s[3 + k];
    double a = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) a += G[k][i][j] * s[3 + i] * s[3 + j];
    ds[3 + k] = -a;
  }
}

State6 shoot(double psi0, double th, double ph, double w, int steps) {
  State6 s{psi0, th, ph, -1.0, 0.0, 0.0};  // unit normal -d_psi points into M^+
  double h = w / steps;
  for (int n = 0; n < steps; ++n) {
    State6 k1, k2, k3, k4, tmp;
    geodesic_rhs(s, k1);
    for (int i = 0; i < 6; ++i) tmp[i] = s[i] + 0.5 * h * k1[i];
    geodesic_rhs(tmp, k2);
    for (int i = 0; i < 6; ++i) tmp[i] = s[i] + 0.5 * h * k2[i];
    geodesic_rhs(tmp, k3);
    for (int i = 0; i < 6; ++i) tmp[i] = s[i] + h * k3[i];
    geodesic_rhs(tmp, k4);
    for (int i = 0; i < 6; ++i) s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return s;
}

}  // namespace

CollarReport collar_coordinates(double t, double width, int n_samples) {
  if (!(width > 0.0)) throw ConfigError("collar width must be positive");
  CollarReport rep;
  rep.t = t;
  rep.width = width;
  double psi0 = 0.5 * kPi - t;
  RoundS3 s3;
  const double d = 1e-5;
  auto xyz = [](const State6& s) { return Vec<double, 3>{s[0], s[1], s[2]}; };
  auto jac_det = [&](double th, double ph, double w) {
    int steps = std::max(8, int(std::ceil(w / 2e-3)));
    auto sp = shoot(psi0, th + d, ph, w, steps), sm = shoot(psi0, th - d, ph, w, steps);
    auto fp = shoot(psi0, th, ph + d, w, steps), fm = shoot(psi0, th, ph - d, w, steps);
    auto c = shoot(psi0, th, ph, w, steps);
    Mat<double, 3> J{};
    for (int i = 0; i < 3; ++i) {
      J[i][0] = (sp[i] - sm[i]) / (2 * d);
      J[i][1] = (fp[i] - fm[i]) / (2 * d);
      J[i][2] = c[3 + i];
    }
    double vol = std::sqrt(determinant(s3(xyz(c))));
    return std::make_tuple(determinant(J) * vol, c, J);
  };
  for (int k = 0; k < n_samples; ++k) {
    double th = 0.4 + 2.3 * (k + 0.5) / n_samples;
    double ph = 0.7 * k;
    auto [det0, c0, J0] = jac_det(th, ph, 1e-6);
    // march outward checking the flow stays a diffeomorphism
    int checks = std::max(8, int(std::ceil(width / 0.05)));
    for (int m = 1; m <= checks; ++m) {
      double w = width * m / checks;
      double det;
      State6 c;
      Mat<double, 3> J;
      try {
        std::tie(det, c, J) = jac_det(th, ph, w);
      } catch (const OutOfDomain&) {
        throw CausticReached("normal geodesics from Sigma cross the polar axis within the collar width");
      }
      if (!(det / det0 > 1e-3)) throw CausticReached("normal flow from Sigma degenerates within the collar width");
      if (m == checks) {
        auto g = s3(xyz(c));
        Vec<double, 3> vw{J[0][2], J[1][2], J[2][2]}, vt{J[0][0], J[1][0], J[2][0]};
        CollarSample smp;
        smp.theta = th;
        smp.phi = ph;
        smp.w = w;
        smp.psi = c[0];
        smp.w_exact = psi0 - c[0];
        smp.grad_residual = std::abs(dot(g, vw, vw) - 1.0);
        smp.cross_term = std::abs(dot(g, vw, vt)) / std::sqrt(dot(g, vt, vt));
        rep.max_grad_residual = std::max(rep.max_grad_residual, smp.grad_residual);
        rep.max_cross_term = std::max(rep.max_cross_term, smp.cross_term);
        rep.max_w_error = std::max(rep.max_w_error, std::abs(smp.w - smp.w_exact));
        rep.samples.push_back(smp);
      }
    }
  }
  return rep;
}

GraphExpansion minimal_graph_expansion(double t) {
  GraphExpansion g;
  g.route = "closed_form";
  auto cap = cap_family(t, false);
  g.eta_M = cap.eta_M;
  double s = std::sin(t), psi0 = 0.5 * kPi - t;
  std::vector<Rung> data;
  Ladder lad{0.2, 0.8, 16};
  for (double r : lad.epsilons()) data.push_back({r, psi0 - cap_colatitude_at(s, r)});
  std::vector<BasisTerm> basis{{2.0, 0}, {4.0, 1}, {4.0, 0}, {6.0, 0}, {8.0, 0}};
  auto f = fit_expansion(data, basis, 1e10, false);
  g.c2 = f.coeff(2.0);
  g.c4_log = f.coeff(4.0, 1);
  g.c4 = f.coeff(4.0);
  g.condition = f.condition;
  g.c2_target = g.eta_M / 4.0;
  g.rel_error = std::abs(g.c2_target) < 1e-12 ? std::abs(g.c2) : std::abs(g.c2 / g.c2_target - 1.0);
  return g;
}

namespace {

// orbit-space metric for SO(3)-invariant hypersurfaces psi = psi(r) of the hyperbolic
// normal form: area = 4 pi * length in F^2 (dr^2 + a^2 dpsi^2), F = a^2 sin^2 psi / r^3.
// Conformal to dr^2 + a^2 dpsi^2 with log F = 2 log a + 2 log sin psi - 3 log r.
// Christoffels in closed form; the metric degenerates on the axis.
std::array<double, 2> gamma_vv(const Vec<double, 2>& x, const Vec<double, 2>& v) {
  double r = x[0], psi = x[1];
  double a = 1.0 - r * r / 4.0, ap = -r / 2.0;
  double pr = 2.0 * ap / a - 3.0 / r, pp = 2.0 * std::cos(psi) / std::sin(psi);
  // background: G^r_pp = -a a', G^p_rp = a'/a
  double vr = v[0], vp = v[1];
  double nb2 = vr * vr + a * a * vp * vp;  // gbar(v, v)
  double dphi = pr * vr + pp * vp;
  std::array<double, 2> out;
  out[0] = -a * ap * vp * vp + 2.0 * vr * dphi - nb2 * pr;
  out[1] = 2.0 * ap / a * vr * vp + 2.0 * vp * dphi - nb2 * pp / (a * a);
  return out;
}

}  // namespace

GraphExpansion minimal_graph_expansion_ode(double rho0) {
  namespace odeint = boost::numeric::odeint;
  if (!(rho0 > 0.05 && rho0 < 1.95)) throw ConfigError("axis radius must lie in (0.05, 1.95)");
  GraphExpansion g;
  g.route = "ode";
  // phase 1: r(psi) from the axis, r = rho0 + c psi^2
  double a0 = 1.0 - rho0 * rho0 / 4.0;
  double c = 0.5 * a0 * (-0.5 * rho0 - a0 / rho0);
  using S2 = std::array<double, 2>;
  double psi_s = 1e-3;
  S2 st{rho0 + c * psi_s * psi_s, 2.0 * c * psi_s};
  auto rhs1 = [](const S2& s, S2& ds, double psi) {
    Vec<double, 2> x{s[0], psi}, v{s[1], 1.0};
    auto q = gamma_vv(x, v);
    ds[0] = s[1];
    ds[1] = -q[0] + s[1] * q[1];
  };
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<S2>>(1e-12, 1e-12);
  double psi = psi_s;
  double dpsi = 1e-3;
  int guard = 0;
  while (std::abs(st[1]) < 1.0) {
    double prev = psi;
    odeint::integrate_adaptive(stepper, rhs1, st, psi, psi + 1e-2, dpsi);
    psi = prev + 1e-2;
    if (++guard > 400 || !(st[0] > 0.0) || !std::isfinite(st[0])) throw ODESolveFailure("axis phase did not turn");
  }
  // phase 2: psi(r) with r decreasing
  S2 s2{psi, 1.0 / st[1]};
  double r = st[0];
  auto rhs2 = [](const S2& s, S2& ds, double rr) {
    Vec<double, 2> x{rr, s[0]}, v{1.0, s[1]};
    auto q = gamma_vv(x, v);
    ds[0] = s[1];
    ds[1] = -q[1] + s[1] * q[0];
  };
  Ladder lad{0.2, 0.8, 16};
  auto rs = lad.epsilons();
  if (r <= rs.front()) throw ODESolveFailure("curve reached the boundary too early");
  std::vector<Rung> data;
  for (double target : rs) {
    odeint::integrate_adaptive(stepper, rhs2, s2, r, target, -1e-3);
    r = target;
    if (!std::isfinite(s2[0])) throw ODESolveFailure("non-finite state");
    data.push_back({target, s2[0]});
  }
  std::vector<BasisTerm> basis{{0.0, 0}, {2.0, 0}, {4.0, 1}, {4.0, 0}, {6.0, 0}, {8.0, 0}};
  auto f = fit_expansion(data, basis, 1e10, false);
  g.ode_psi_end = f.coeff(0.0);
  g.c2 = -f.coeff(2.0);
  g.c4_log = -f.coeff(4.0, 1);
  g.c4 = -f.coeff(4.0);
  g.condition = f.condition;
  g.eta_M = 2.0 / std::tan(g.ode_psi_end);
  g.c2_target = g.eta_M / 4.0;
  g.rel_error = std::abs(g.c2_target) < 1e-12 ? std::abs(g.c2) : std::abs(g.c2 / g.c2_target - 1.0);
  return g;
}

}  // namespace rv
