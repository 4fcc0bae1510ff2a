#include <cmath>
#include <random>

#include "doctest.h"
#include "rv/errors.hpp"
#include "rv/fit.hpp"
#include "rv/identities.hpp"
#include "rv/models.hpp"
#include "rv/quadrature.hpp"

using namespace rv;

namespace {
std::vector<Rung> sample(const Ladder& l, double (*f)(double)) {
  std::vector<Rung> r;
  for (double e : l.epsilons()) r.push_back({e, f(e)});
  return r;
}
}  // namespace

TEST_CASE("Gauss-Legendre is exact to degree 2n-1") {
  for (std::size_t n : {2u, 5u, 12u, 24u}) {
    auto g = gauss_legendre(n);
    for (std::size_t d = 0; d <= 2 * n - 1; ++d) {
      double s = 0;
      for (std::size_t i = 0; i < n; ++i) s += g.w[i] * std::pow(g.x[i], double(d));
      double exact = d % 2 ? 0.0 : 2.0 / double(d + 1);
      CHECK(std::abs(s - exact) < 1e-12);
    }
  }
}

TEST_CASE("compensated sum keeps small addends") {
  CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1000.0);
}

TEST_CASE("volume of the unit round S^3 is 2 pi^2") {
  RoundS3 m;
  auto f = [&m](const std::array<double, 3>& q) { return std::sqrt(determinant(m(q))); };
  auto r = integrate_refined(f, make_box<3>({0.0, 0.0, 0.0}, {kPi, kPi, 2.0 * kPi}, {16, 16, 4}));
  CHECK(r.value == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-10));
  CHECK(r.error < 1e-8);
}

TEST_CASE("integral of zero is zero") {
  auto r = integrate_refined([](const std::array<double, 2>&) { return 0.0; }, make_box<2>({0.0, 0.0}, {1.0, 1.0}, {4, 4}));
  CHECK(r.value == 0.0);
}

TEST_CASE("truncated hyperbolic volume matches the radial antiderivative") {
  // vol{r > eps} = 2 pi^2 int_eps^2 (1 - r^2/4)^3 r^-4 dr
  auto F = [](double r) { return -1.0 / (3.0 * r * r * r) + 0.75 / r + 3.0 * r / 16.0 - r * r * r / 192.0; };
  double eps = 0.1;
  double exact = 2.0 * kPi * kPi * (F(2.0) - F(eps));
  double v = truncated_volume(std::nullopt, eps, 32, 32);
  CHECK(std::abs(v - exact) / exact < 1e-6);
}

TEST_CASE("exact recovery of a synthetic volume expansion") {
  Ladder l;
  auto f = fit_expansion(sample(l, [](double e) { return 5.0 / (e * e * e) + 2.0 / e + 7.0; }), volume_basis(false, 0));
  CHECK(f.c0 == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(f.c2 == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(f.V == doctest::Approx(7.0).epsilon(1e-9));
  CHECK(f.residual_norm < 1e-8);
}

TEST_CASE("finite part of a synthetic surface integrand") {
  Ladder l{0.2, 0.8, 12};
  auto f = finite_part_fit(sample(l, [](double e) { return 3.0 / e - 1.25 + 0.4 * e * std::log(e); }), true, 1);
  CHECK(std::abs(f.V + 1.25) < 1e-6);
  CHECK(f.coeff(-1.0) == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("fit rejects too few rungs and bad ladders") {
  std::vector<Rung> d{{0.2, 1.0}, {0.1, 2.0}, {0.05, 3.0}};
  CHECK_THROWS_AS(fit_expansion(d, volume_basis(false, 1)), FitFailure);
  CHECK_THROWS(validate_ladder(Ladder{0.2, 1.2, 10}));
  CHECK_THROWS(validate_ladder(Ladder{-0.2, 0.8, 10}));
  CHECK_THROWS(validate_ladder(Ladder{0.2, 0.8, 3}));
  std::vector<Rung> bad{{0.2, 1.0}, {0.1, NAN}, {0.05, 3.0}, {0.03, 1.0}, {0.02, 1.0}, {0.01, 1.0}};
  CHECK_THROWS_AS(fit_expansion(bad, volume_basis(false, 0)), FitFailure);
}

TEST_CASE("ladder is geometric and strictly decreasing") {
  auto e = Ladder{0.2, 0.8, 10}.epsilons();
  REQUIRE(e.size() == 10);
  for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i] == doctest::Approx(0.8 * e[i - 1]).epsilon(1e-14));
}

TEST_CASE("Richardson limit of L + a h^2") {
  std::vector<Rung> s;
  for (double h : {0.1, 0.05, 0.025}) s.push_back({h, 1.5 + 0.7 * h * h});
  auto r = richardson_limit(s, 2.0, 2.0, 1e-6);
  CHECK(std::abs(r.value - 1.5) < 1e-10);
}

TEST_CASE("central derivative of a quadratic is exact") {
  auto V = [](double t) { return 2.0 + 3.0 * t - 4.0 * t * t; };
  double h = 0.05;
  double d = central_derivative({V(h), V(-h), V(h / 2), V(-h / 2)}, h);
  CHECK(d == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("finite part is stable when the ladder start is halved") {
  RenvolOptions a, b;
  a.cap_t = 0.0;
  b.cap_t = 0.0;
  b.ladder.eps0 = 0.1;
  double Va = renormalized_volume_half(a).fit.V;
  double Vb = renormalized_volume_half(b).fit.V;
  CHECK(std::abs(Va - Vb) / std::abs(Va) < 1e-3);
}

TEST_CASE("random synthetic expansions are recovered (property)") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-5.0, 5.0);
  for (int i = 0; i < 30; ++i) {
    double a = U(rng), b = U(rng), c = U(rng), d = U(rng);
    std::vector<Rung> data;
    for (double e : Ladder{}.epsilons()) data.push_back({e, a / (e * e * e) + b / e + c + d * e});
    auto f = fit_expansion(data, volume_basis(false, 1));
    CHECK(std::abs(f.c0 - a) < 1e-9 * std::max(1.0, std::abs(a)));
    CHECK(std::abs(f.V - c) < 1e-9 * std::max(1.0, std::abs(c)));
  }
}
