#pragma once

// Jacobi fields, the two sides of the volume variation, first-variation formulas and
// the algebraic identity / conformal property suites.

#include <cstdint>
#include <string>
#include <vector>

#include "rv/fit.hpp"

namespace rv {

// ---- Jacobi equation Delta f = (3 - |L|^2) f ----

struct JacobiOptions {
  std::string surface = "equatorial";  // "equatorial" | "clifford"
  double boundary_value = 1.0;         // constant boundary data f~
  double rho_max = 12.0;               // outer hyperbolic radius of the solve
  double rho_start = 1e-3;             // series start off the centre
  double node_spacing = 0.01;
};

struct JacobiSolution {
  std::string surface;
  double boundary_value = 0.0;
  double amplitude = 0.0;                // f = amplitude * u, u(0) = 1
  std::vector<double> rho, f;            // sampled solution
  double max_pde_residual = 0.0;         // kernel Laplacian on the interpolant
  double max_cosh_error = 0.0;           // |f - c cosh rho| / (|c| cosh rho) (0 when c == 0)
  double max_abs_f = 0.0;
  double boundary_limit = 0.0;           // fitted lim r f
  double boundary_error = 0.0;           // |boundary_limit - f~|
  double remainder_slope = 0.0;          // ladder slope of r f - f~ (> 0 means o(1))
  double uniqueness_gap = 0.0;           // two start points, max relative difference
  double max_L0_sq = 0.0;                // |L0|^2 on the surface (hypothesis)
};

JacobiSolution jacobi_solve(const JacobiOptions& opt);

// |L|^2 / r^2 on a catalog surface at small r (input check |L|^2 = O(r^2))
struct LSizeCheck {
  std::string surface;
  std::vector<double> r, ratio;
  double limit = 0.0;
};
LSizeCheck l_size_check(const std::string& surface);

// ---- volume variation ----

struct VariationOptions {
  std::string family = "caps";  // "caps" | "formal"
  double delta = 0.05;
  double g3_amp = 0.1;          // formal family only
  Ladder ladder{};
};

struct VariationReport {
  std::string family;
  bool formal = false;
  bool lhs_available = false;
  double lhs = 0.0;
  double lhs_error = 0.0;
  std::vector<double> t_samples, v_samples;
  double rhs_boundary = 0.0;
  double rhs_bulk = 0.0;
  double bulk_log_coeff = 0.0;
  double residual = 0.0;
  // independent Weyl-asymptotic evaluation of the boundary term
  double boundary_weyl = 0.0;
  double boundary_closed = 0.0;
  double weyl_rel_error = 0.0;
};

VariationReport variation_two_sides(const VariationOptions& opt);

// finite part of the bulk term of the variation on the Clifford cone with weight f~:
// int_{r>eps} |L|^2 f~ / r dv = a eps^-1 + b + ...; compares a with oint |II~|^2 f~
struct ConeBulkCheck {
  SeriesFit fit;
  double leading_target = 0.0;
  double leading_rel_error = 0.0;
};
ConeBulkCheck cone_bulk_check();

// ---- first-variation formulas along normal variations f nu ----

struct VariationResidual {
  std::string quantity;
  double finite_difference = 0.0;  // Richardson-combined derivative (max-norm component)
  double formula = 0.0;
  double residual = 0.0;           // max over components
  double printed_residual = -1.0;  // as printed, where that differs (negative: not applicable)
  double err_h = 0.0, err_h2 = 0.0; // plain central-difference errors at dt, dt/2
  bool second_order = true;
};

struct AppendixReport {
  std::string family;
  std::vector<VariationResidual> rows;
  double max_residual = 0.0;
};

AppendixReport appendix_variations(const std::string& family, double dt = 1e-3);

// ---- algebraic identities ----

struct SuiteResult {
  std::string name;
  int trials = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  double printed_residual = -1.0;  // as printed, where that differs (negative: not applicable)
  bool pass() const { return max_residual <= tolerance; }
};

SuiteResult weyl_split_suite(std::uint64_t seed, int trials = 50);
SuiteResult gauss_consequence_suite(std::uint64_t seed, int trials = 50);
SuiteResult codazzi_general_suite(std::uint64_t seed, int trials = 50);
SuiteResult codazzi_minimal_suite(std::uint64_t seed, int trials = 50);
SuiteResult simons_suite(std::uint64_t seed, int trials = 50);

double weyl_split_residual_formal(double g3_amp);

// ---- conformal weight and covariance property suites ----

SuiteResult conformal_weight_suite(const std::string& quantity, std::uint64_t seed, int trials = 50);
SuiteResult covariance_suite(const std::string& law, std::uint64_t seed, int trials = 50);

}  // namespace rv
