#include "rv/fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "rv/errors.hpp"

namespace rv {

std::vector<double> Ladder::epsilons() const {
  std::vector<double> e;
  double x = eps0;
  for (int k = 0; k < rungs; ++k, x *= ratio) e.push_back(x);
  return e;
}

void validate_ladder(const Ladder& l) {
  if (!(l.eps0 > 0.0 && l.eps0 < 1.0)) throw ConfigError("ladder eps0 must lie in (0, 1)");
  if (!(l.ratio > 0.0 && l.ratio < 1.0)) throw ConfigError("ladder ratio must lie in (0, 1)");
  if (l.rungs < 6 || l.rungs > 60) throw ConfigError("ladder needs between 6 and 60 rungs");
}

std::string BasisTerm::label() const {
  std::ostringstream os;
  os << "eps^" << power;
  if (log_power == 1) os << "*log(eps)";
  if (log_power > 1) os << "*log(eps)^" << log_power;
  return os.str();
}

double BasisTerm::operator()(double eps) const {
  double v = std::pow(eps, power);
  for (int k = 0; k < log_power; ++k) v *= std::log(eps);
  return v;
}

// eps^-3, eps^-1, [log], 1 plus eps^1..eps^tail
std::vector<BasisTerm> volume_basis(bool with_log, int tail_order) {
  std::vector<BasisTerm> b{{-3.0, 0}, {-1.0, 0}};
  if (with_log) b.push_back({0.0, 1});
  b.push_back({0.0, 0});
  for (int k = 1; k <= tail_order; ++k) b.push_back({double(k), 0});
  return b;
}

std::vector<BasisTerm> surface_basis(bool with_log, int tail_order) {
  std::vector<BasisTerm> b{{-1.0, 0}};
  if (with_log) b.push_back({0.0, 1});
  b.push_back({0.0, 0});
  for (int k = 1; k <= tail_order; ++k) {
    b.push_back({double(k), 0});
    if (with_log) b.push_back({double(k), 1});
  }
  return b;
}

double SeriesFit::coeff(double power, int log_power) const {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].power == power && basis[i].log_power == log_power) return coeffs[i];
  return 0.0;
}

namespace {

struct Solved {
  Eigen::VectorXd c;
  double resid;
  double cond;
};

Solved solve_ls(const std::vector<Rung>& data, const std::vector<BasisTerm>& basis) {
  const auto m = Eigen::Index(data.size());
  const auto n = Eigen::Index(basis.size());
  Eigen::MatrixXd A(m, n);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) A(i, j) = basis[std::size_t(j)](data[std::size_t(i)].eps);
    y(i) = data[std::size_t(i)].value;
  }
  // column scaling so the condition number reflects the basis, not the units
  Eigen::VectorXd s(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    s(j) = A.col(j).norm();
    if (s(j) == 0.0) throw FitFailure("basis column vanishes on the ladder");
    A.col(j) /= s(j);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  auto sv = svd.singularValues();
  double cond = sv(0) / sv(sv.size() - 1);
  Eigen::VectorXd c = svd.solve(y);
  double resid = (A * c - y).norm();
  for (Eigen::Index j = 0; j < n; ++j) c(j) /= s(j);
  return {c, resid, cond};
}

}  // namespace

SeriesFit fit_expansion(const std::vector<Rung>& data, const std::vector<BasisTerm>& basis, double max_condition,
                        bool check_drop) {
  if (data.size() < basis.size() + 2 || data.size() < 6) throw FitFailure("too few rungs for the requested basis");
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!std::isfinite(data[i].value) || !(data[i].eps > 0.0)) throw FitFailure("non-finite ladder value");
    if (i > 0 && !(data[i].eps < data[i - 1].eps)) throw FitFailure("ladder must be strictly decreasing");
  }
  auto s = solve_ls(data, basis);
  if (!(s.cond <= max_condition)) throw FitFailure("ill-conditioned fit");
  SeriesFit f;
  f.basis = basis;
  f.rungs = data;
  f.coeffs.assign(s.c.data(), s.c.data() + s.c.size());
  f.residual_norm = s.resid;
  f.condition = s.cond;
  f.c0 = f.coeff(-3.0);
  f.c2 = f.coeff(-1.0);
  f.c_log = f.coeff(0.0, 1);
  f.V = f.coeff(0.0);
  if (check_drop && data.size() >= basis.size() + 3) {
    std::vector<Rung> d2(data.begin() + 1, data.end());
    auto s2 = solve_ls(d2, basis);
    SeriesFit g;
    g.basis = basis;
    g.coeffs.assign(s2.c.data(), s2.c.data() + s2.c.size());
    f.drop_change = std::abs(g.coeff(0.0) - f.V);
    f.stable = f.drop_change <= 1e-3 * std::max(1.0, std::abs(f.V));
  }
  return f;
}

SeriesFit finite_part_fit(const std::vector<Rung>& data, bool with_log, int tail_order) {
  return fit_expansion(data, surface_basis(with_log, tail_order));
}

Extrapolation richardson_limit(const std::vector<Rung>& samples, double p, double dp, double tol) {
  const std::size_t n = samples.size();
  if (n < 2) throw ExtrapolationDivergence("need at least two samples");
  // T[k][j]: j eliminations using samples k-j..k
  std::vector<std::vector<double>> T(n);
  for (std::size_t k = 0; k < n; ++k) {
    T[k].push_back(samples[k].value);
    for (std::size_t j = 1; j <= k; ++j) {
      double q = std::pow(samples[k - j].eps / samples[k].eps, p + dp * double(j - 1));
      T[k].push_back(T[k][j - 1] + (T[k][j - 1] - T[k - 1][j - 1]) / (q - 1.0));
    }
  }
  Extrapolation e;
  e.value = T[n - 1][n - 1];
  e.error = std::abs(T[n - 1][n - 1] - T[n - 1][n - 2]);
  if (!std::isfinite(e.value)) throw ExtrapolationDivergence("non-finite extrapolation");
  if (n >= 3) {
    double prev = std::abs(T[n - 2][n - 2] - T[n - 2][n - 3]);
    double scale = std::max(1.0, std::abs(e.value));
    if (e.error > 10.0 * prev && e.error > tol * scale) throw ExtrapolationDivergence("Richardson table does not settle");
  }
  return e;
}

double central_derivative(const CentralSamples& s, double h) {
  double d1 = (s.fp_h - s.fm_h) / (2.0 * h);
  double d2 = (s.fp_h2 - s.fm_h2) / h;
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace rv
