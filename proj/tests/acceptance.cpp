// Acceptance run: one [PASS]/[FAIL] line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "rv/catalog.hpp"
#include "rv/errors.hpp"
#include "rv/identities.hpp"
#include "rv/report.hpp"
#include "rv/suite.hpp"
#include "rv/tensor.hpp"

using namespace rv;

namespace {

constexpr double kPi2 = kPi * kPi;
constexpr std::uint64_t kSeed = 1;
constexpr int kTrials = 50;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome renvol_golden() {
  RenvolOptions o;
  o.cap_t = 0.0;
  auto r = renormalized_volume_half(o);
  double e = rel(r.fit.V, 2.0 * kPi2 / 3.0);
  return {e <= 1e-3, "V=" + fmt("%.10g", r.fit.V) + " rel=" + fmt("%.2e", e)};
}

Outcome gauss_bonnet() {
  bool ok = true;
  std::string d;
  for (double eps : {0.05, 0.1, 0.2}) {
    GBOptions o;
    o.cap_t = 0.0;
    o.eps = eps;
    auto b = gauss_bonnet_breakdown(o);
    double e = std::abs(b.residual) / b.chi_target;
    ok = ok && e <= 1e-3;
    d += "eps=" + fmt("%g", eps) + ":" + fmt("%.1e", e) + " ";
  }
  return {ok, d};
}

Outcome gbrv() {
  bool ok = true;
  std::string d;
  for (double t : {0.0, 0.3, -0.4}) {
    RenvolOptions o;
    o.cap_t = t;
    auto g = gbrv_residual(o);
    ok = ok && std::abs(g.residual) <= 2e-3 * kPi2;
    d += "t=" + fmt("%g", t) + ":" + fmt("%.1e", g.residual) + " ";
  }
  return {ok, d};
}

Outcome divergent() {
  RenvolOptions o;
  o.cap_t = 0.0;
  auto r = renormalized_volume_half(o);
  double e0 = rel(3.0 * r.fit.c0, r.vol_M_plus);
  double e2 = rel(r.fit.c2, -0.75 * kPi2);
  return {e0 <= 1e-4 && e2 <= 1e-4, "3c0:" + fmt("%.1e", e0) + " c2:" + fmt("%.1e", e2)};
}

Outcome weights() {
  bool ok = true;
  std::string d;
  for (const char* q : {"C", "L", "G", "W2"}) {
    auto r = conformal_weight_suite(q, kSeed, kTrials);
    ok = ok && r.trials == kTrials && r.max_residual <= 1e-4;
    d += std::string(q) + ":" + fmt("%.1e", r.max_residual) + " ";
  }
  return {ok, d};
}

Outcome covariance() {
  bool ok = true;
  std::string d;
  for (const char* q : {"T", "U"}) {
    auto r = covariance_suite(q, kSeed, kTrials);
    ok = ok && r.trials == kTrials && r.max_residual <= 1e-4;
    d += std::string(q) + ":" + fmt("%.1e", r.max_residual) + " ";
  }
  return {ok, d};
}

Outcome v2() {
  std::vector<double> y{0.9, 1.1, 0.6};
  auto round = volume_coefficient_v2(V2Options{}, y);
  bool ok = std::abs(round.fitted + 0.75) <= 1e-4;
  double worst = 0;
  for (unsigned s = 1; s <= 5; ++s) {
    V2Options p;
    p.boundary = "random";
    p.seed = s;
    auto q = volume_coefficient_v2(p, y);
    worst = std::max(worst, std::abs(q.fitted - q.target));
  }
  ok = ok && worst <= 1e-4;
  return {ok, "round=" + fmt("%.8f", round.fitted) + " random:" + fmt("%.1e", worst)};
}

Outcome appendix() {
  bool ok = true;
  std::string d;
  for (const char* fam : {"sphere", "cap"}) {
    auto a = appendix_variations(fam);
    bool second = true;
    for (const auto& r : a.rows) second = second && r.second_order;
    ok = ok && a.max_residual <= 1e-6 && second && a.rows.size() >= 5;
    d += std::string(fam) + ":" + fmt("%.1e", a.max_residual) + (second ? " O(dt^2) " : " not-O(dt^2) ");
  }
  return {ok, d};
}

Outcome jacobi() {
  JacobiOptions o;
  o.boundary_value = 0.7;
  auto s = jacobi_solve(o);
  o.boundary_value = 0.0;
  auto z = jacobi_solve(o);
  bool ok = s.max_cosh_error <= 1e-5 && s.boundary_error <= 1e-3 && z.max_abs_f <= 1e-10;
  return {ok, "cosh:" + fmt("%.1e", s.max_cosh_error) + " boundary:" + fmt("%.1e", s.boundary_error) +
                  " zero:" + fmt("%.1e", z.max_abs_f)};
}

Outcome graph() {
  bool ok = true;
  std::string d;
  for (double t : {0.2, 0.5, -0.3}) {
    auto g = minimal_graph_expansion(t);
    ok = ok && g.rel_error <= 1e-2;
    d += "t=" + fmt("%g", t) + ":" + fmt("%.1e", g.rel_error) + " ";
  }
  return {ok, d};
}

Outcome variation() {
  auto caps = variation_two_sides(VariationOptions{});
  VariationOptions f;
  f.family = "formal";
  auto formal = variation_two_sides(f);
  bool ok = caps.lhs_available && std::abs(caps.lhs) <= 1e-3 && caps.rhs_boundary == 0.0 && formal.formal &&
            formal.weyl_rel_error <= 1e-3;
  return {ok, "caps dV/dt:" + fmt("%.1e", caps.lhs) + " rhs:" + fmt("%g", caps.rhs_boundary) +
                  " FORMAL weyl-route:" + fmt("%.1e", formal.weyl_rel_error) +
                  " (exact non-symmetric Einstein example: not reproduced)"};
}

Outcome algebra() {
  struct S {
    const char* name;
    SuiteResult (*f)(std::uint64_t, int);
  };
  bool ok = true;
  std::string d;
  for (auto s : {S{"weyl", weyl_split_suite}, S{"gauss", gauss_consequence_suite}, S{"codazzi", codazzi_general_suite},
                 S{"codazzi-min", codazzi_minimal_suite}, S{"simons", simons_suite}}) {
    auto r = s.f(kSeed, kTrials);
    ok = ok && r.trials == kTrials && r.max_residual <= 1e-6;
    d += std::string(s.name) + ":" + fmt("%.1e", r.max_residual) + " ";
  }
  return {ok, d};
}

Outcome determinism() {
  bool ok = true;
  for (const char* verb : {"renvol", "identities"}) {
    RunConfig c;
    c.verification = verb;
    c.cap = 0.0;
    c.suite = "algebra";
    c.trials = 10;
    auto a = run(c), b = run(c);
    ok = ok && dump_json(a.to_json()) == dump_json(b.to_json()) && a.to_csv() == b.to_csv();
  }
  return {ok, ok ? "json and csv identical" : "reports differ"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<Outcome()> f;
  };
  const Criterion all[] = {
      {"renormalized volume of the equatorial half ball", renvol_golden},
      {"corner Gauss-Bonnet closure", gauss_bonnet},
      {"volume formula residual on caps", gbrv},
      {"divergent coefficients 3c0 and c2", divergent},
      {"conformal weights", weights},
      {"covariance laws", covariance},
      {"v2 = -R/8", v2},
      {"first-variation formulas", appendix},
      {"Jacobi solution", jacobi},
      {"graph coefficient", graph},
      {"first variation of the volume", variation},
      {"algebraic identities", algebra},
      {"determinism", determinism},
  };
  int failed = 0, i = 0;
  for (const auto& c : all) {
    ++i;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.f();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    while (!o.detail.empty() && o.detail.back() == ' ') o.detail.pop_back();
    std::printf("[%s] %2d %s | %s | %.1fs\n", o.pass ? "PASS" : "FAIL", i, c.title, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", i - failed, i);
  return failed ? 1 : 0;
}
