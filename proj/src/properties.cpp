#include <cmath>
#include <random>

#include "rv/corner.hpp"
#include "rv/extrinsic.hpp"
#include "rv/models.hpp"
#include "rv/random_shapes.hpp"
#include "rv/suite.hpp"

namespace rv {

namespace {

double rel(double a, double b, double scale) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), scale, 1e-8}); }

}  // namespace

SuiteResult conformal_weight_suite(const std::string& quantity, std::uint64_t seed, int trials) {
  if (trials < 1) throw ConfigError("trials must be positive");
  SuiteResult r;
  r.name = "weight_" + quantity;
  r.trials = trials;
  r.tolerance = 1e-4;
  for (int i = 0; i < trials; ++i) {
    std::mt19937_64 rng(seed * 1000003ULL + std::uint64_t(i));
    RandomMetric<4> g(rng(), 0.1);
    RandomOmega<4> om(rng(), 0.3);
    auto gt = conformal_rescale(g, om);
    double res = 0;
    if (quantity == "C" || quantity == "L" || quantity == "C_printed") {
      auto s = random_graph_surface(rng);
      auto y = random_point3(rng);
      double w = om(s.embed(y));
      auto eval = [&](const auto& m) {
        if (quantity == "C") return c_invariant(m, s, y);
        if (quantity == "C_printed") return c_invariant_printed(m, s, y);
        return chang_qing_L(m, s, y);
      };
      double a = eval(g);
      double b = std::exp(3.0 * w) * eval(gt);
      res = rel(a, b, 0.0);
    } else if (quantity == "G") {
      auto c = random_corner(rng);
      double w = om(c.Z(c.z));
      double a = g_curvature(corner_data(g, c.FN, c.FS, c.Z, c.z));
      double b = std::exp(2.0 * w) * g_curvature(corner_data(gt, c.FN, c.FS, c.Z, c.z));
      res = rel(a, b, 0.0);
    } else if (quantity == "W2") {
      auto y = random_point3(rng);
      Vec<double, 4> x{y[0], y[1], y[2], 0.3 * y[0] - 0.2};
      double w = om(x);
      res = rel(weyl_norm_sq(g, x), std::exp(4.0 * w) * weyl_norm_sq(gt, x), 0.0);
    } else {
      throw ConfigError("unknown conformal quantity '" + quantity + "'");
    }
    r.max_residual = std::max(r.max_residual, res);
  }
  return r;
}

SuiteResult covariance_suite(const std::string& law, std::uint64_t seed, int trials) {
  if (trials < 1) throw ConfigError("trials must be positive");
  SuiteResult r;
  r.name = "covariance_" + law;
  r.trials = trials;
  r.tolerance = 1e-4;
  for (int i = 0; i < trials; ++i) {
    std::mt19937_64 rng(seed * 1000033ULL + std::uint64_t(i));
    RandomMetric<4> g(rng(), 0.1);
    RandomOmega<4> om(rng(), 0.3);
    auto gt = conformal_rescale(g, om);
    double res = 0;
    if (law == "T" || law == "T_printed") {
      auto s = random_graph_surface(rng);
      auto y = random_point3(rng);
      double w = om(s.embed(y));
      double T = t_curvature(g, s, y);
      double Tt = std::exp(3.0 * w) * t_curvature(gt, s, y);
      auto p3 = p3_terms(g, s, om, y);
      double P = law == "T" ? p3.total() : p3.printed();
      res = std::abs(Tt - T - P) / std::max({std::abs(T), std::abs(Tt), std::abs(P), 1e-8});
    } else if (law == "U") {
      auto c = random_corner(rng);
      double w = om(c.Z(c.z));
      double U = u_curvature(corner_data(g, c.FN, c.FS, c.Z, c.z));
      double Ut = std::exp(2.0 * w) * u_curvature(corner_data(gt, c.FN, c.FS, c.Z, c.z));
      double P = p2_apply(g, c.FN, c.FS, c.Z, om, c.z);
      res = std::abs(Ut - U - P) / std::max({std::abs(U), std::abs(Ut), std::abs(P), 1e-8});
    } else {
      throw ConfigError("unknown covariance law '" + law + "'");
    }
    r.max_residual = std::max(r.max_residual, res);
  }
  return r;
}

}  // namespace rv
