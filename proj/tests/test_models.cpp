#include <cmath>

#include "doctest.h"
#include "rv/catalog.hpp"
#include "rv/curvature.hpp"
#include "rv/errors.hpp"
#include "rv/models.hpp"
#include "rv/surfaces.hpp"

using namespace rv;

namespace {
template <class M> double einstein_residual(const M& m, const Vec<double, 4>& x) {
  auto rs = ricci_scalar(m, x);
  auto g = m(x);
  double e = 0, s = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      e = std::max(e, std::abs(rs.ricci[i][j] + 3.0 * g[i][j]));
      s = std::max(s, std::abs(g[i][j]));
    }
  return e / s;
}
}  // namespace

TEST_CASE("models that claim Einstein are Einstein") {
  Vec<double, 4> q{0.6, 1.1, 0.9, 0.3};
  CHECK(einstein_residual(hyperbolic_normal_form(), q) < 1e-6);
  CHECK(einstein_residual(hyperbolic_normal_form(2.0), q) < 1e-6);
  CHECK(einstein_residual(hopf_normal_form(), Vec<double, 4>{0.6, 0.5, 1.0, 2.0}) < 1e-6);
  CHECK(einstein_residual(HyperbolicBall{}, Vec<double, 4>{0.3, 0.1, -0.2, 0.4}) < 1e-6);
}

TEST_CASE("formal models are labelled and are not Einstein") {
  auto f = hyperbolic_normal_form(1.0, 0.1);
  CHECK(f.formal());
  CHECK_FALSE(hyperbolic_normal_form().formal());
  CHECK(einstein_residual(f, Vec<double, 4>{0.6, 1.1, 0.9, 0.3}) > 1e-4);
}

TEST_CASE("model parameters are validated") {
  CHECK_THROWS_AS(hyperbolic_normal_form(-1.0), ConfigError);
  CHECK_THROWS_AS(cap_family(1.4), ConfigError);
}

TEST_CASE("cap family: eta_M = 2 tan t, minimal and totally geodesic") {
  for (double t : {-0.4, 0.0, 0.3, 0.8}) {
    auto m = cap_family(t);
    CHECK(m.eta_M == doctest::Approx(2.0 * std::tan(t)).epsilon(1e-10));
    CHECK(std::abs(m.eta_M - m.eta_M_closed) < 1e-10);
    CHECK(m.max_abs_H < 1e-8);
    CHECK(m.max_abs_L < 1e-8);
    CHECK(m.sigma_area == doctest::Approx(4.0 * kPi * std::cos(t) * std::cos(t)).epsilon(1e-10));
  }
  CHECK(cap_family(0.0).vol_M_plus == doctest::Approx(kPi * kPi).epsilon(1e-10));
}

TEST_CASE("v2 = -R/8: round value -3/4 and random boundary oracle") {
  std::vector<double> y{0.9, 1.1, 0.6};
  V2Options o;
  auto r = volume_coefficient_v2(o, y);
  CHECK(std::abs(r.fitted + 0.75) < 1e-6);
  CHECK(std::abs(r.direct + 0.75) < 1e-12);
  CHECK(std::abs(r.target + 0.75) < 1e-12);
  for (unsigned s : {1u, 2u, 3u}) {
    V2Options p;
    p.boundary = "random";
    p.seed = s;
    auto q = volume_coefficient_v2(p, y);
    CHECK(std::abs(q.fitted - q.target) < 1e-6);
    CHECK(std::abs(q.direct - q.target) < 1e-10);
  }
}

TEST_CASE("collar coordinates are eikonal with no cross terms") {
  auto c = collar_coordinates(0.3, 0.5, 8);
  CHECK(c.max_grad_residual < 1e-8);
  CHECK(c.max_cross_term < 1e-8);
  CHECK(c.max_w_error < 1e-8);
}

TEST_CASE("collar beyond the focal point raises CausticReached") {
  // the latitude sphere at t = 0.3 sits at colatitude pi/2 - 0.3 from the pole
  CHECK_THROWS_AS(collar_coordinates(0.3, 1.4, 4), CausticReached);
}

TEST_CASE("graph expansion coefficient equals eta_M / 4") {
  for (double t : {0.2, 0.5, -0.3}) {
    auto g = minimal_graph_expansion(t);
    CHECK(g.rel_error < 1e-2);
    CHECK(g.c2_target == doctest::Approx(0.5 * std::tan(t)).epsilon(1e-12));
  }
  auto g0 = minimal_graph_expansion(0.0);
  CHECK(std::abs(g0.c2) < 1e-8);
}

TEST_CASE("graph coefficient from the independent ODE route") {
  for (double rho0 : {0.6, 1.0}) {
    auto g = minimal_graph_expansion_ode(rho0);
    CHECK(g.route == "ode");
    CHECK(g.rel_error < 1e-2);
  }
}

TEST_CASE("ball and normal-form charts give the same scalar invariants") {
  HyperbolicBall b;
  auto nf = hyperbolic_normal_form();
  for (Vec<double, 4> x : {Vec<double, 4>{0.2, 0.1, -0.3, 0.25}, Vec<double, 4>{-0.5, 0.3, 0.2, 0.1}}) {
    auto q = ball_to_nf(x);
    CHECK(scalar_curvature(nf, q) == doctest::Approx(scalar_curvature(b, x)).epsilon(1e-6));
    CHECK(q_curvature_4d(nf, q) == doctest::Approx(q_curvature_4d(b, x)).epsilon(1e-6));
    CHECK(std::abs(weyl_norm_sq(nf, q) - weyl_norm_sq(b, x)) < 1e-6);
  }
}
