#pragma once

// Least-squares fits of epsilon-expansions, finite parts, Richardson extrapolation.

#include <string>
#include <vector>

namespace rv {

struct Rung {
  double eps = 0.0;
  double value = 0.0;
};

struct Ladder {
  double eps0 = 0.2;
  double ratio = 0.8;
  int rungs = 10;
  std::vector<double> epsilons() const;
};

void validate_ladder(const Ladder& l);

// basis function eps^power * log(eps)^log_power
struct BasisTerm {
  double power = 0.0;
  int log_power = 0;
  std::string label() const;
  double operator()(double eps) const;
};

std::vector<BasisTerm> volume_basis(bool with_log = false, int tail_order = 0);
std::vector<BasisTerm> surface_basis(bool with_log = true, int tail_order = 1);

struct SeriesFit {
  std::vector<BasisTerm> basis;
  std::vector<double> coeffs;
  double c0 = 0.0;     // eps^-3
  double c2 = 0.0;     // eps^-1
  double c_log = 0.0;  // log eps
  double V = 0.0;      // eps^0
  double residual_norm = 0.0;
  double condition = 0.0;
  double drop_change = 0.0;  // change in V after dropping the largest eps
  bool stable = true;
  std::vector<Rung> rungs;
  double coeff(double power, int log_power = 0) const;
};

// throws FitFailure on too few rungs, condition > max_condition, or non-finite data
SeriesFit fit_expansion(const std::vector<Rung>& data, const std::vector<BasisTerm>& basis,
                        double max_condition = 1e10, bool check_drop = true);

// finite part of a surface integral with divergence {eps^-1, log eps, 1}
SeriesFit finite_part_fit(const std::vector<Rung>& data, bool with_log = true, int tail_order = 1);

struct Extrapolation {
  double value = 0.0;
  double error = 0.0;
};

// Richardson elimination for samples (h_k, f(h_k)) with error expansion
// sum_j a_j h^(p + j*dp). Throws ExtrapolationDivergence when the table does not settle.
Extrapolation richardson_limit(const std::vector<Rung>& samples, double p = 2.0, double dp = 2.0, double tol = 1e-6);

// O(h^4)-accurate central derivative from f(+-h), f(+-h/2) combined by Richardson
struct CentralSamples {
  double fp_h, fm_h, fp_h2, fm_h2;
};
double central_derivative(const CentralSamples& s, double h);

}  // namespace rv
