#include <cmath>
#include <random>

#include "doctest.h"
#include "rv/corner.hpp"
#include "rv/curvature.hpp"
#include "rv/extrinsic.hpp"
#include "rv/hypersurface.hpp"
#include "rv/models.hpp"
#include "rv/random_shapes.hpp"
#include "rv/surfaces.hpp"

using namespace rv;

namespace {

struct SphereR3 {
  double rho = 1.5;
  template <class T> Vec<T, 3> operator()(const Vec<T, 2>& q) const {
    T st = sin(q[0]);
    return {rho * st * cos(q[1]), rho * st * sin(q[1]), rho * cos(q[0])};
  }
};
struct InsideR3 {
  double rho = 1.5;
  template <class T> T operator()(const Vec<T, 3>& x) const { return rho - sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }
};

struct ToBall {
  template <class T> Vec<T, 4> operator()(const Vec<T, 4>& q) const { return nf_to_ball(q); }
};

template <std::size_t N> double max_abs(const Mat<double, N>& a) {
  double m = 0;
  for (auto& r : a)
    for (double v : r) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("dual numbers differentiate elementary functions") {
  auto f = [](const auto& x) { return sin(x[0]) * exp(x[1]); };
  Vec<double, 2> x{0.3, -0.2};
  auto g = jacobian(f, x);
  CHECK(g[0] == doctest::Approx(std::cos(0.3) * std::exp(-0.2)).epsilon(1e-14));
  CHECK(g[1] == doctest::Approx(std::sin(0.3) * std::exp(-0.2)).epsilon(1e-14));
  auto H = hessian(f, x);
  CHECK(H[0][1] == doctest::Approx(std::cos(0.3) * std::exp(-0.2)).epsilon(1e-14));
  CHECK(H[0][0] == doctest::Approx(-std::sin(0.3) * std::exp(-0.2)).epsilon(1e-14));
}

TEST_CASE("flat metric has vanishing Christoffels and curvature") {
  Flat<4> m;
  Vec<double, 4> x{0.1, 0.2, 0.3, 0.4};
  auto G = christoffel(m, x);
  for (auto& a : G) CHECK(max_abs(a) == 0.0);
  CHECK(scalar_curvature(m, x) == 0.0);
}

TEST_CASE("round sphere has R_ijkl = g_ik g_jl - g_il g_jk") {
  SphereStereo<3> m;
  Vec<double, 3> x{0.2, -0.4, 0.5};
  auto R = riemann(m, x);
  auto g = m(x);
  double e = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) e = std::max(e, std::abs(R[i][j][k][l] - (g[i][k] * g[j][l] - g[i][l] * g[j][k])));
  CHECK(e < 1e-10);
  CHECK(scalar_curvature(m, x) == doctest::Approx(6.0).epsilon(1e-10));
}

TEST_CASE("hyperbolic ball is Einstein with Q = 6 and vanishing Weyl") {
  HyperbolicBall m;
  Vec<double, 4> x{0.1, -0.3, 0.2, 0.4};
  auto rs = ricci_scalar(m, x);
  auto g = m(x);
  double e = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e = std::max(e, std::abs(rs.ricci[i][j] + 3.0 * g[i][j]));
  CHECK(e < 1e-9);
  CHECK(rs.scalar == doctest::Approx(-12.0).epsilon(1e-10));
  CHECK(std::abs(weyl_norm_sq(m, x)) < 1e-18);
  // -Delta R/6 - |Ric|^2/2 + R^2/6 with R = -12, |Ric|^2 = 36; same value on the round S^4,
  // where int Q = 6 vol(S^4) = 16 pi^2 = 8 pi^2 chi
  CHECK(q_curvature_4d(m, x) == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(q_curvature_4d(SphereStereo<4>{}, Vec<double, 4>{0.3, 0.1, -0.2, 0.5}) == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("points outside the ball are rejected") {
  HyperbolicBall m;
  CHECK_THROWS_AS(riemann(m, Vec<double, 4>{0.9, 0.5, 0.0, 0.0}), OutOfDomain);
}

TEST_CASE("scalar curvature transforms as R~ = e^{-2w}(R - 6 Delta w - 6|dw|^2)") {
  for (std::uint64_t s = 1; s <= 5; ++s) {
    RandomMetric<4> g(s, 0.1);
    RandomOmega<4> w(s, 0.3);
    auto gt = conformal_rescale(g, w);
    Vec<double, 4> x{0.2, -0.1, 0.3, 0.05 * double(s)};
    double lap = laplace_beltrami(g, w, x);
    auto dw = jacobian(w, x);
    auto gi = inverse(g(x));
    double n2 = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) n2 += gi[i][j] * dw[i] * dw[j];
    double lhs = scalar_curvature(gt, x);
    double rhs = std::exp(-2.0 * w(x)) * (scalar_curvature(g, x) - 6.0 * lap - 6.0 * n2);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("normal-form chart is an isometry onto the ball") {
  auto nf = hyperbolic_normal_form();
  HyperbolicBall b;
  ToBall map;
  Pullback<HyperbolicBall, ToBall, 4> pb{&b, &map};
  for (Vec<double, 4> q : {Vec<double, 4>{0.3, 1.0, 1.2, 0.4}, Vec<double, 4>{1.1, 2.0, 0.7, -2.0}}) {
    auto a = pb(q);
    auto c = nf(q);
    Mat<double, 4> d{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) d[i][j] = a[i][j] - c[i][j];
    CHECK(max_abs(d) < 1e-10 * max_abs(c));
    auto back = ball_to_nf(nf_to_ball(q));
    for (int i = 0; i < 4; ++i) CHECK(back[i] == doctest::Approx(q[i]).epsilon(1e-13));
  }
}

TEST_CASE("r = 2(1-|x|)/(1+|x|) is a geodesic defining function") {
  CompactifiedBall gb;
  HyperbolicBall gp;
  for (Vec<double, 4> x : {Vec<double, 4>{0.1, 0.2, -0.3, 0.1}, Vec<double, 4>{0.5, -0.4, 0.3, 0.6}}) {
    auto dr = jacobian([](const auto& y) { return ball_defining_function(y); }, x);
    auto gi = inverse(gb(x));
    double n2 = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) n2 += gi[i][j] * dr[i] * dr[j];
    CHECK(n2 == doctest::Approx(1.0).epsilon(1e-13));
    double r = ball_defining_function(x);
    CHECK(gb(x)[0][0] == doctest::Approx(r * r * gp(x)[0][0]).epsilon(1e-13));
  }
}

TEST_CASE("round sphere in R^3 with inward normal: L = h/rho, H = 2/rho") {
  double rho = 1.5;
  auto s = make_surface<3>(SphereR3{rho}, InsideR3{rho});
  auto sd = shape_data(Flat<3>{}, s, Vec<double, 2>{0.8, 0.3});
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(sd.L[a][b] == doctest::Approx(sd.h[a][b] / rho).epsilon(1e-12));
  CHECK(sd.H == doctest::Approx(2.0 / rho).epsilon(1e-12));
}

TEST_CASE("Clifford cone is minimal with |L|^2 = 2r^2/(1-r^2/4)^2") {
  auto m = hopf_normal_form();
  auto s = clifford_cone();
  for (double r : {0.2, 0.7, 1.5}) {
    auto sd = shape_data(m, s, Vec<double, 3>{r, 0.4, 1.3});
    CHECK(std::abs(sd.H) < 1e-10);
    CHECK(norm2_cov(sd.hi, sd.L) == doctest::Approx(clifford_cone_L2(r)).epsilon(1e-10));
  }
}

TEST_CASE("latitude caps are totally geodesic") {
  HyperbolicBall m;
  std::mt19937_64 rng(4);
  for (double t : {-0.5, 0.0, 0.3, 0.9}) {
    auto s = cap_surface(t);
    auto y = random_point3(rng, 0.3);
    auto sd = shape_data(m, s, y);
    CHECK(max_abs(sd.L) < 1e-10 * max_abs(sd.h));
  }
}

TEST_CASE("corner curvatures are symmetric in the two faces") {
  std::mt19937_64 rng(11);
  RandomMetric<4> g(5, 0.1);
  for (int i = 0; i < 5; ++i) {
    auto c = random_corner(rng);
    auto cd = corner_data(g, c.FN, c.FS, c.Z, c.z);
    auto sw = swapped(cd);
    CHECK(g_curvature(sw) == doctest::Approx(g_curvature(cd)).epsilon(1e-12));
    CHECK(u_curvature(sw) == doctest::Approx(u_curvature(cd)).epsilon(1e-12));
    auto p = p2_apply(g, c.FN, c.FS, c.Z, RandomOmega<4>(3), c.z);
    auto q = p2_apply(g, c.FS, c.FN, c.Z, RandomOmega<4>(3), c.z);
    CHECK(p == doctest::Approx(q).epsilon(1e-10));
  }
}

TEST_CASE("C equals the printed form on Einstein ambients") {
  HyperbolicBall m;
  auto s = cap_surface(0.4);
  std::mt19937_64 rng(2);
  auto y = random_point3(rng, 0.3);
  CHECK(c_invariant(m, s, y) == doctest::Approx(c_invariant_printed(m, s, y)).epsilon(1e-12));
}
