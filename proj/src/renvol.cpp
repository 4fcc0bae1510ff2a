#include <cmath>

#include "rv/catalog.hpp"
#include "rv/curvature.hpp"
#include "rv/extrinsic.hpp"
#include "rv/identities.hpp"
#include "rv/models.hpp"
#include "rv/quadrature.hpp"
#include "rv/surfaces.hpp"

namespace rv {

double truncated_volume(std::optional<double> cap_t, double eps, int psi_order, int radial_order) {
  if (!(eps > 0.0 && eps < 2.0)) throw ConfigError("eps must lie in (0, 2)");
  auto nf = hyperbolic_normal_form();
  std::optional<double> s;
  if (cap_t) s = std::sin(*cap_t);
  // integrand is independent of (theta, phi): evaluate on the equator of S^2 and multiply by its area
  auto f = [&](double r, double psi) {
    Vec<double, 4> q{r, psi, 0.5 * kPi, 0.0};
    return std::array<double, 1>{4.0 * kPi * std::sqrt(determinant(nf(q)))};
  };
  return integrate_cap_region<1>(s, eps, std::size_t(radial_order), 6, std::size_t(psi_order), f)[0];
}

RenvolReport renormalized_volume_half(const RenvolOptions& opt) {
  validate_ladder(opt.ladder);
  RenvolReport rep;
  std::vector<Rung> data;
  for (double e : opt.ladder.epsilons()) data.push_back({e, truncated_volume(opt.cap_t, e, opt.psi_order, opt.radial_order)});
  rep.fit = fit_expansion(data, volume_basis(false, opt.tail_order));
  if (opt.cap_t) {
    auto cap = cap_family(*opt.cap_t, false);
    rep.vol_M_plus = cap.vol_M_plus;
    rep.eta_integral = cap.eta_M * cap.sigma_area;
    rep.target_V = 2.0 * kPi * kPi / 3.0;
  } else {
    rep.vol_M_plus = 2.0 * kPi * kPi;
    rep.target_V = 4.0 * kPi * kPi / 3.0;
  }
  RoundS3 s3;
  rep.Rh_integral = scalar_curvature(s3, Vec<double, 3>{1.0, 1.0, 0.0}) * rep.vol_M_plus;
  rep.c0_target = rep.vol_M_plus / 3.0;
  rep.c2_target = -(0.375 * rep.Rh_integral + 0.75 * rep.eta_integral) / 3.0;
  return rep;
}

namespace {

// 1/8 int |W|^2 over X^+ n {r > eps}
double weyl_integral(std::optional<double> cap_t, double eps) {
  HyperbolicBall g;
  auto nf = hyperbolic_normal_form();
  std::optional<double> s;
  if (cap_t) s = std::sin(*cap_t);
  auto gt = gauss_legendre(4), gf = gauss_legendre(3);
  auto f = [&](double r, double psi) {
    CompensatedSum acc;
    for (std::size_t j = 0; j < gt.x.size(); ++j)
      for (std::size_t k = 0; k < gf.x.size(); ++k) {
        double th = 0.5 * kPi * (1.0 + gt.x[j]), ph = kPi * (1.0 + gf.x[k]);
        Vec<double, 4> q{r, psi, th, ph};
        double dv = std::sqrt(determinant(nf(q)));
        acc.add(0.5 * kPi * gt.w[j] * kPi * gf.w[k] * dv * 0.125 * weyl_norm_sq(g, nf_to_ball(q)));
      }
    return std::array<double, 1>{acc.value()};
  };
  return integrate_cap_region<1>(s, eps, 6, 3, 8, f)[0];
}

// int_Y C dv over the part of the cap inside {r > eps}
double c_integral(double t, double eps) {
  HyperbolicBall gp;
  auto surf = cap_surface(t);
  auto cc = cap_corner(t, ball_radius_of_eps(eps));
  auto g2 = gauss_legendre(6), g3 = gauss_legendre(4);
  auto radial = [&](double rho) {
    CompensatedSum acc;
    for (std::size_t j = 0; j < g2.x.size(); ++j)
      for (std::size_t k = 0; k < g3.x.size(); ++k) {
        double th = 0.5 * kPi * (1.0 + g2.x[j]), ph = kPi * (1.0 + g3.x[k]);
        Vec<double, 3> y{rho * std::sin(th) * std::cos(ph), rho * std::sin(th) * std::sin(ph), rho * std::cos(th)};
        Pullback<HyperbolicBall, CapGraph, 3> pb{&gp, &surf.embed};
        double dv = std::sqrt(determinant(pb(y)));
        acc.add(0.5 * kPi * g2.w[j] * kPi * g3.w[k] * rho * rho * std::sin(th) * dv * c_invariant(gp, surf, y));
      }
    return acc.value();
  };
  return integrate_graded(radial, 0.0, cc.rho0, 6, 4);
}

}  // namespace

GbrvReport gbrv_residual(const RenvolOptions& opt) {
  GbrvReport rep;
  rep.renvol = renormalized_volume_half(opt);
  double eps = opt.ladder.epsilons().back();
  if (opt.cap_t) {
    rep.chi_X = 1.0;
    rep.chi_Sigma = 2.0;
    rep.c_term = c_integral(*opt.cap_t, eps);
  } else {
    // whole ball: no Y and no corner
    rep.chi_X = 1.0;
    rep.chi_Sigma = 0.0;
  }
  rep.weyl_term = weyl_integral(opt.cap_t, eps);
  rep.lhs = kPi * kPi * (4.0 * rep.chi_X - rep.chi_Sigma);
  rep.three_V = 3.0 * rep.renvol.fit.V;
  rep.residual = rep.lhs - rep.three_V - rep.weyl_term - rep.c_term;
  return rep;
}

}  // namespace rv
