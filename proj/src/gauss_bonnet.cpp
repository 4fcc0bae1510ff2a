#include <cmath>

#include "rv/corner.hpp"
#include "rv/curvature.hpp"
#include "rv/extrinsic.hpp"
#include "rv/identities.hpp"
#include "rv/models.hpp"
#include "rv/quadrature.hpp"
#include "rv/surfaces.hpp"

namespace rv {

namespace {

// omega = -log r, so that g_+ = e^{2 omega} gbar
struct OmegaLogR {
  template <class T> T operator()(const Vec<T, 4>& x) const { return -log(ball_defining_function(x)); }
};

template <class M, class Map, std::size_t P, class T> double density(const M& m, const Map& map, const Vec<T, P>& q) {
  Pullback<M, Map, P> pb{&m, &map};
  return std::sqrt(std::abs(determinant(pb(q))));
}

double interior_integral(std::optional<double> cap_t, double eps, const QuadOrders& o, double& w_part) {
  HyperbolicBall g;
  auto nf = hyperbolic_normal_form();
  std::optional<double> s;
  if (cap_t) s = std::sin(*cap_t);
  auto gt = gauss_legendre(std::size_t(o.theta));
  auto gf = gauss_legendre(std::size_t(o.phi));
  auto angles = [&](double r, double psi) {
    CompensatedSum qs, ws;
    for (std::size_t k = 0; k < gt.x.size(); ++k) {
      double th = 0.5 * kPi * (1.0 + gt.x[k]);
      double wt = 0.5 * kPi * gt.w[k];
      for (std::size_t l = 0; l < gf.x.size(); ++l) {
        double ph = kPi * (1.0 + gf.x[l]);
        double w = wt * kPi * gf.w[l];
        Vec<double, 4> q{r, psi, th, ph};
        double dv = std::sqrt(determinant(nf(q)));
        auto x = nf_to_ball(q);
        qs.add(w * dv * 0.5 * q_curvature_4d(g, x));
        ws.add(w * dv * 0.125 * weyl_norm_sq(g, x));
      }
    }
    return std::array<double, 2>{qs.value(), ws.value()};
  };
  auto v = integrate_cap_region<2>(s, eps, std::size_t(o.radial), o.radial_levels, std::size_t(o.psi), angles);
  w_part = v[1];
  return v[0];
}

// integral of (L + T) over M_eps^+ in the chosen route
double face_M_integral(std::optional<double> cap_t, double eps, GBRoute route, const QuadOrders& o, double& correction) {
  double R = ball_radius_of_eps(eps);
  double s = cap_t ? std::sin(*cap_t) : 0.0;
  double psi_b = cap_t ? cap_boundary_colatitude(s, eps) : kPi;
  SphereAngles emb{R};
  auto surf = make_surface<4>(emb, SphereLevel{R});
  HyperbolicBall gp;
  CompactifiedBall gb;
  OmegaLogR om;
  auto g1 = gauss_legendre(std::size_t(o.face));
  auto g2 = gauss_legendre(std::size_t(std::max(4, o.face / 2)));
  auto g3 = gauss_legendre(std::size_t(std::max(4, o.face / 3)));
  CompensatedSum sum, corr;
  for (std::size_t i = 0; i < g1.x.size(); ++i) {
    double psi = 0.5 * psi_b * (1.0 + g1.x[i]);
    double wpsi = 0.5 * psi_b * g1.w[i];
    for (std::size_t j = 0; j < g2.x.size(); ++j) {
      double th = 0.5 * kPi * (1.0 + g2.x[j]);
      double wt = 0.5 * kPi * g2.w[j];
      for (std::size_t k = 0; k < g3.x.size(); ++k) {
        double ph = kPi * (1.0 + g3.x[k]);
        double wf = kPi * g3.w[k];
        Vec<double, 3> q{psi, th, ph};
        double w = wpsi * wt * wf;
        if (route == GBRoute::GPlus) {
          auto e = extrinsic_terms(gp, surf, q, true);
          sum.add(w * density(gp, emb, q) * (chang_qing_from(e) + t_from(e)));
        } else {
          auto e = extrinsic_terms(gb, surf, q, true);
          double dv = density(gb, emb, q);
          double p3 = p3_apply(gb, surf, om, q);
          sum.add(w * dv * (chang_qing_from(e) + t_from(e) + p3));
          corr.add(w * dv * p3);
        }
      }
    }
  }
  correction = corr.value();
  return sum.value();
}

// integral of (L + T) over Y_eps, Y the cap graph over the 3-ball |x'| < rho0
double face_Y_integral(double t, double eps, GBRoute route, const QuadOrders& o) {
  double R = ball_radius_of_eps(eps);
  auto cc = cap_corner(t, R);
  auto surf = cap_surface(t);
  HyperbolicBall gp;
  CompactifiedBall gb;
  OmegaLogR om;
  auto g2 = gauss_legendre(std::size_t(std::max(4, o.face / 2)));
  auto g3 = gauss_legendre(std::size_t(std::max(4, o.face / 3)));
  std::size_t nr = std::size_t(std::max(4, o.face / 2));
  auto radial = [&](double rho) {
    CompensatedSum acc;
    for (std::size_t j = 0; j < g2.x.size(); ++j) {
      double th = 0.5 * kPi * (1.0 + g2.x[j]);
      double wt = 0.5 * kPi * g2.w[j];
      for (std::size_t k = 0; k < g3.x.size(); ++k) {
        double ph = kPi * (1.0 + g3.x[k]);
        double wf = kPi * g3.w[k];
        Vec<double, 3> y{rho * std::sin(th) * std::cos(ph), rho * std::sin(th) * std::sin(ph), rho * std::cos(th)};
        double jac = rho * rho * std::sin(th);
        double val;
        if (route == GBRoute::GPlus) {
          auto e = extrinsic_terms(gp, surf, y, true);
          val = density(gp, surf.embed, y) * (chang_qing_from(e) + t_from(e));
        } else {
          auto e = extrinsic_terms(gb, surf, y, true);
          val = density(gb, surf.embed, y) * (chang_qing_from(e) + t_from(e) + p3_apply(gb, surf, om, y));
        }
        acc.add(wt * wf * jac * val);
      }
    }
    return acc.value();
  };
  return integrate_graded(radial, 0.0, cc.rho0, nr, 6);
}

double corner_integral(double t, double eps, GBRoute route, const QuadOrders& o, double& correction) {
  double R = ball_radius_of_eps(eps);
  auto cc = cap_corner(t, R);
  CapLevel FN{t};
  SphereLevel FS{R};
  HyperbolicBall gp;
  CompactifiedBall gb;
  OmegaLogR om;
  auto g1 = gauss_legendre(std::size_t(o.corner));
  auto g2 = gauss_legendre(std::size_t(std::max(4, o.corner / 2)));
  CompensatedSum sum, corr;
  for (std::size_t i = 0; i < g1.x.size(); ++i) {
    double th = 0.5 * kPi * (1.0 + g1.x[i]);
    double wt = 0.5 * kPi * g1.w[i];
    for (std::size_t j = 0; j < g2.x.size(); ++j) {
      double ph = kPi * (1.0 + g2.x[j]);
      double wf = kPi * g2.w[j];
      Vec<double, 2> z{th, ph};
      if (route == GBRoute::GPlus) {
        auto cd = corner_data(gp, FN, FS, cc, z);
        sum.add(wt * wf * density(gp, cc, z) * (u_curvature(cd) + g_curvature(cd)));
      } else {
        auto cd = corner_data(gb, FN, FS, cc, z);
        double p2 = p2_apply(gb, FN, FS, cc, om, z);
        double dk = density(gb, cc, z);
        sum.add(wt * wf * dk * (u_curvature(cd) + g_curvature(cd) + p2));
        corr.add(wt * wf * dk * p2);
      }
    }
  }
  correction = corr.value();
  return sum.value();
}

}  // namespace

EquatorialClosedForm equatorial_closed_form(double eps) {
  // {r = eps} is the geodesic sphere of radius s with e^{-s} = eps/2
  double s = std::log(2.0 / eps);
  double c = std::cosh(s);
  double pi2 = kPi * kPi;
  return {pi2 * (c * c * c - 3.0 * c + 2.0), pi2 * (3.0 * c - c * c * c), 2.0 * pi2};
}

GaussBonnetBreakdown gauss_bonnet_breakdown(const GBOptions& opt) {
  if (!(opt.eps > 0.0 && opt.eps < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
  GaussBonnetBreakdown b;
  b.eps = opt.eps;
  b.cap_t = opt.cap_t;
  b.route = opt.route == GBRoute::GPlus ? "g_plus" : "g_bar";
  b.interior_Q = interior_integral(opt.cap_t, opt.eps, opt.orders, b.interior_W);
  b.face_M = face_M_integral(opt.cap_t, opt.eps, opt.route, opt.orders, b.face_M_correction);
  if (opt.cap_t) {
    b.face_Y = face_Y_integral(*opt.cap_t, opt.eps, opt.route, opt.orders);
    b.corner = corner_integral(*opt.cap_t, opt.eps, opt.route, opt.orders, b.corner_correction);
  }
  b.chi_target = 4.0 * kPi * kPi * 1.0;
  b.residual = b.interior_W + b.interior_Q + b.face_Y + b.face_M + b.corner - b.chi_target;
  return b;
}

}  // namespace rv
