#include <cmath>

#include "rv/catalog.hpp"
#include "rv/curvature.hpp"
#include "rv/errors.hpp"
#include "rv/identities.hpp"
#include "rv/models.hpp"
#include "rv/report.hpp"
#include "rv/suite.hpp"
#include "rv/surfaces.hpp"

namespace rv {

namespace {

constexpr double kPi2 = kPi * kPi;

template <class M> ojson curvature_at(const M& m, const Vec<double, 4>& x, double& einstein_res) {
  if (!m.in_domain(x)) throw ConfigError("numeric.point lies outside the model chart");
  auto rs = ricci_scalar(m, x);
  auto g = m(x);
  double e = 0, s = 0;
  ojson ric = ojson::array();
  for (int i = 0; i < 4; ++i) {
    ojson row = ojson::array();
    for (int j = 0; j < 4; ++j) {
      row.push_back(rs.ricci[i][j]);
      e = std::max(e, std::abs(rs.ricci[i][j] + 3.0 * g[i][j]));
      s = std::max(s, std::abs(g[i][j]));
    }
    ric.push_back(row);
  }
  einstein_res = e / s;
  ojson j;
  j["point"] = {x[0], x[1], x[2], x[3]};
  j["scalar_curvature"] = rs.scalar;
  j["weyl_norm_sq"] = weyl_norm_sq(m, x);
  j["q_curvature"] = q_curvature_4d(m, x);
  j["ricci"] = ric;
  j["einstein_residual"] = einstein_res;
  return j;
}

Vec<double, 4> point_or(const RunConfig& c, Vec<double, 4> d) {
  if (c.point) return {(*c.point)[0], (*c.point)[1], (*c.point)[2], (*c.point)[3]};
  return d;
}

void run_curvature(const RunConfig& c, ReportDocument& d) {
  const auto& name = c.model.name;
  double e = 0;
  bool einstein = true;
  if (name == "hyperbolic") {
    auto x = point_or(c, {0.1, -0.2, 0.15, 0.3});
    d.results["curvature"] = curvature_at(HyperbolicBall{}, x, e);
    // same point in the normal-form chart
    double e2 = 0;
    auto q = ball_to_nf(x);
    auto nf = curvature_at(hyperbolic_normal_form(), q, e2);
    d.results["normal_form_curvature"] = nf;
    const auto& b = d.results["curvature"];
    for (const char* k : {"scalar_curvature", "weyl_norm_sq", "q_curvature"})
      d.check(std::string("isometry.") + k, nf[k].get<double>(), b[k].get<double>(), c.tol("isometry"));
  } else if (name == "hyperbolic-normal-form") {
    d.results["curvature"] = curvature_at(hyperbolic_normal_form(c.model.round_radius), point_or(c, {0.5, 1.0, 1.1, 0.7}), e);
    einstein = c.model.round_radius == 1.0;
    if (!einstein) d.formal = true;
  } else if (name == "formal") {
    d.results["curvature"] = curvature_at(hyperbolic_normal_form(1.0, c.model.g3_amp), point_or(c, {0.5, 1.0, 1.1, 0.7}), e);
    einstein = false;
    d.formal = true;
  } else if (name == "hopf") {
    d.results["curvature"] = curvature_at(hopf_normal_form(), point_or(c, {0.5, 0.6, 1.0, 2.0}), e);
  } else {
    d.results["curvature"] = curvature_at(RandomMetric<4>(c.model.seed, c.model.amp), point_or(c, {0.1, 0.2, 0.3, 0.4}), e);
    einstein = false;
  }
  d.row("scalar_curvature", d.results["curvature"]["scalar_curvature"].get<double>());
  d.row("weyl_norm_sq", d.results["curvature"]["weyl_norm_sq"].get<double>());
  d.row("q_curvature", d.results["curvature"]["q_curvature"].get<double>());
  if (einstein) d.check("einstein_residual", e, 0.0, c.tol("einstein"));
  else d.row("einstein_residual", e);
  if (c.cap) {
    auto m = cap_family(*c.cap, true);
    ojson j;
    j["t"] = m.t;
    j["eta_M"] = m.eta_M;
    j["eta_M_closed"] = m.eta_M_closed;
    j["max_abs_H"] = m.max_abs_H;
    j["max_abs_L"] = m.max_abs_L;
    j["vol_M_plus"] = m.vol_M_plus;
    j["sigma_area"] = m.sigma_area;
    d.results["cap"] = j;
    d.check("cap.max_abs_H", m.max_abs_H, 0.0, c.tol("cap_geodesy"));
    d.check("cap.max_abs_L", m.max_abs_L, 0.0, c.tol("cap_geodesy"));
    d.check("cap.eta_M", m.eta_M, m.eta_M_closed, c.tol("cap_geodesy"));
  }
}

void require_hyperbolic(const RunConfig& c) {
  if (c.model.name != "hyperbolic")
    throw ConfigError("model.name '" + c.model.name + "' is not supported by " + c.verification + " (use hyperbolic)");
}

void run_gauss_bonnet(const RunConfig& c, ReportDocument& d) {
  require_hyperbolic(c);
  GBOptions o;
  o.cap_t = c.cap;
  o.eps = c.epsilon;
  o.route = c.route == "g_bar" ? GBRoute::GBar : GBRoute::GPlus;
  auto b = gauss_bonnet_breakdown(o);
  ojson j;
  j["epsilon"] = b.eps;
  j["route"] = b.route;
  j["interior_W"] = b.interior_W;
  j["interior_Q"] = b.interior_Q;
  j["face_Y"] = b.face_Y;
  j["face_M"] = b.face_M;
  j["corner"] = b.corner;
  j["chi_target"] = b.chi_target;
  j["residual"] = b.residual;
  j["face_M_correction"] = b.face_M_correction;
  j["corner_correction"] = b.corner_correction;
  for (const char* k : {"interior_W", "interior_Q", "face_Y", "face_M", "corner"}) d.row(k, j[k].get<double>(), b.eps);
  d.check("sum", b.interior_W + b.interior_Q + b.face_Y + b.face_M + b.corner, b.chi_target, c.tol("gauss_bonnet"), true);
  if (c.cap && *c.cap == 0.0) {
    auto cf = equatorial_closed_form(c.epsilon);
    j["closed_form"] = {{"interior", cf.interior}, {"face_M", cf.face_M}, {"corner", cf.corner}};
    d.check("closed_form.interior", b.interior_W + b.interior_Q, cf.interior, c.tol("identity"), true);
    d.check("closed_form.face_M", b.face_M, cf.face_M, c.tol("identity"), true);
    d.check("closed_form.corner", b.corner, cf.corner, c.tol("identity"), true);
  }
  d.results["breakdown"] = j;
}

RenvolOptions renvol_options(const RunConfig& c, std::optional<double> cap) {
  RenvolOptions o;
  o.cap_t = cap;
  o.ladder = c.ladder;
  return o;
}

ojson renvol_json(const RenvolReport& r) {
  ojson j;
  j["fit"] = fit_to_json(r.fit);
  j["V"] = r.fit.V;
  j["target_V"] = r.target_V;
  j["vol_M_plus"] = r.vol_M_plus;
  j["eta_integral"] = r.eta_integral;
  j["Rh_integral"] = r.Rh_integral;
  j["c0_target"] = r.c0_target;
  j["c2_target"] = r.c2_target;
  return j;
}

void run_renvol(const RunConfig& c, ReportDocument& d) {
  require_hyperbolic(c);
  auto r = renormalized_volume_half(renvol_options(c, c.cap));
  d.results["renvol"] = renvol_json(r);
  fit_rows(d, r.fit);
  d.check("V", r.fit.V, r.target_V, c.tol("renvol"), true);
  d.check("c0", r.fit.c0, r.c0_target, c.tol("c0"), true);
  d.check("c2", r.fit.c2, r.c2_target, c.tol("c2"), true);
  d.check("3c0_vs_vol_M_plus", 3.0 * r.fit.c0, r.vol_M_plus, c.tol("c0"), true);
}

void run_gbrv(const RunConfig& c, ReportDocument& d) {
  require_hyperbolic(c);
  auto g = gbrv_residual(renvol_options(c, c.cap));
  ojson j;
  j["renvol"] = renvol_json(g.renvol);
  j["chi_X"] = g.chi_X;
  j["chi_Sigma"] = g.chi_Sigma;
  j["lhs"] = g.lhs;
  j["three_V"] = g.three_V;
  j["weyl_term"] = g.weyl_term;
  j["c_term"] = g.c_term;
  j["residual"] = g.residual;
  d.results["gbrv"] = j;
  d.row("lhs", g.lhs);
  d.row("three_V", g.three_V);
  d.row("weyl_term", g.weyl_term);
  d.row("c_term", g.c_term);
  d.check("residual", g.residual, 0.0, c.tol("gbrv") * kPi2);
}

void run_vary(const RunConfig& c, ReportDocument& d) {
  std::string fam = c.family;
  if (fam.empty()) fam = c.model.name == "formal" ? "formal" : "caps";
  if (fam == "caps" || fam == "formal") {
    if (fam == "caps") require_hyperbolic(c);
    if (fam == "formal" && c.model.name != "formal") throw ConfigError("surface.family 'formal' needs model.name 'formal'");
    VariationOptions o;
    o.family = fam;
    o.delta = c.delta;
    o.g3_amp = c.model.g3_amp;
    o.ladder = c.ladder;
    auto v = variation_two_sides(o);
    d.formal = v.formal;
    ojson j;
    j["family"] = v.family;
    j["formal"] = v.formal;
    j["lhs_available"] = v.lhs_available;
    if (v.lhs_available) {
      j["lhs"] = v.lhs;
      j["lhs_error"] = v.lhs_error;
      j["t_samples"] = v.t_samples;
      j["v_samples"] = v.v_samples;
    }
    j["rhs_boundary"] = v.rhs_boundary;
    j["rhs_bulk"] = v.rhs_bulk;
    j["bulk_log_coeff"] = v.bulk_log_coeff;
    if (v.lhs_available) j["residual"] = v.residual;
    j["boundary_weyl"] = v.boundary_weyl;
    j["boundary_closed"] = v.boundary_closed;
    j["weyl_rel_error"] = v.weyl_rel_error;
    d.results["variation"] = j;
    for (std::size_t i = 0; i < v.t_samples.size(); ++i) d.row("V", v.v_samples[i], v.t_samples[i]);
    d.row("rhs_boundary", v.rhs_boundary);
    d.row("rhs_bulk", v.rhs_bulk);
    if (fam == "caps") {
      d.check("dV_dt", v.lhs, 0.0, c.tol("dvdt"));
      d.check_flag("rhs_exactly_zero", v.rhs_boundary == 0.0 && std::abs(v.rhs_bulk) <= 1e-12,
                   "g3 = 0 and the caps are totally geodesic");
    } else {
      d.check("boundary_weyl_route", v.boundary_weyl, v.boundary_closed, c.tol("weyl_route"), true);
      d.row("boundary_weyl", v.boundary_weyl);
    }
    return;
  }
  auto a = appendix_variations(fam, c.dt);
  ojson rows = ojson::array();
  for (const auto& r : a.rows) {
    ojson j;
    j["quantity"] = r.quantity;
    j["finite_difference"] = r.finite_difference;
    j["formula"] = r.formula;
    j["residual"] = r.residual;
    if (r.printed_residual >= 0.0) j["printed_residual"] = r.printed_residual;
    j["err_h"] = r.err_h;
    j["err_h2"] = r.err_h2;
    j["second_order"] = r.second_order;
    rows.push_back(j);
    d.check(r.quantity + ".residual", r.residual, 0.0, c.tol("appendix"));
    d.check_flag(r.quantity + ".second_order", r.second_order);
    if (r.printed_residual >= 0.0) d.row(r.quantity + ".printed_residual", r.printed_residual);
  }
  d.results["appendix"] = {{"family", a.family}, {"dt", c.dt}, {"rows", rows}, {"max_residual", a.max_residual}};
}

void run_jacobi(const RunConfig& c, ReportDocument& d) {
  JacobiOptions o;
  o.surface = c.jacobi_surface;
  o.boundary_value = c.boundary_value;
  auto ls = l_size_check(c.jacobi_surface);
  d.results["l_size"] = {{"surface", ls.surface}, {"r", ls.r}, {"ratio", ls.ratio}, {"limit", ls.limit}};
  JacobiSolution s;
  try {
    s = jacobi_solve(o);
  } catch (const HypothesisViolated& e) {
    d.results["jacobi"] = {{"surface", o.surface}, {"hypothesis", false}, {"error", e.what()}};
    d.check_flag("hypothesis_L0_sq_le_3", false, e.what());
    return;
  }
  ojson j;
  j["surface"] = s.surface;
  j["hypothesis"] = true;
  j["boundary_value"] = s.boundary_value;
  j["amplitude"] = s.amplitude;
  j["max_pde_residual"] = s.max_pde_residual;
  j["max_cosh_error"] = s.max_cosh_error;
  j["max_abs_f"] = s.max_abs_f;
  j["boundary_limit"] = s.boundary_limit;
  j["boundary_error"] = s.boundary_error;
  j["remainder_slope"] = s.remainder_slope;
  j["uniqueness_gap"] = s.uniqueness_gap;
  j["max_L0_sq"] = s.max_L0_sq;
  d.check_flag("hypothesis_L0_sq_le_3", s.max_L0_sq <= 3.0);
  d.row("max_pde_residual", s.max_pde_residual);
  d.row("remainder_slope", s.remainder_slope);
  if (s.boundary_value != 0.0) d.check("cosh_error", s.max_cosh_error, 0.0, c.tol("jacobi_cosh"));
  d.check("boundary_limit", s.boundary_limit, s.boundary_value, c.tol("jacobi_boundary"));
  d.check("uniqueness_gap", s.uniqueness_gap, 0.0, c.tol("jacobi_unique"));
  // zero data gives the zero solution
  JacobiOptions z = o;
  z.boundary_value = 0.0;
  auto s0 = jacobi_solve(z);
  j["zero_data_max_abs_f"] = s0.max_abs_f;
  d.check("zero_data", s0.max_abs_f, 0.0, c.tol("jacobi_zero"));
  d.results["jacobi"] = j;
}

ojson suite_json(const SuiteResult& r) {
  ojson j;
  j["name"] = r.name;
  j["trials"] = r.trials;
  j["max_residual"] = r.max_residual;
  j["tolerance"] = r.tolerance;
  if (r.printed_residual >= 0.0) j["printed_residual"] = r.printed_residual;
  return j;
}

void run_identities(const RunConfig& c, ReportDocument& d) {
  bool all = c.suite == "all";
  ojson suites = ojson::array();
  auto gate = [&](SuiteResult r, double tol) {
    r.tolerance = tol;
    suites.push_back(suite_json(r));
    d.check(r.name, r.max_residual, 0.0, tol);
    if (r.printed_residual >= 0.0) d.row(r.name + ".printed_residual", r.printed_residual);
  };
  auto diag = [&](const SuiteResult& r) {
    suites.push_back(suite_json(r));
    d.row(r.name + ".max_residual", r.max_residual);
  };
  if (all || c.suite == "weights") {
    for (const char* q : {"C", "L", "G", "W2"}) gate(conformal_weight_suite(q, c.seed, c.trials), c.tol("weight"));
    diag(conformal_weight_suite("C_printed", c.seed, c.trials));
  }
  if (all || c.suite == "covariance") {
    for (const char* q : {"T", "U"}) gate(covariance_suite(q, c.seed, c.trials), c.tol("covariance"));
    diag(covariance_suite("T_printed", c.seed, c.trials));
  }
  if (all || c.suite == "algebra") {
    double tol = c.tol("identity");
    gate(weyl_split_suite(c.seed, c.trials), tol);
    gate(gauss_consequence_suite(c.seed, c.trials), tol);
    gate(codazzi_general_suite(c.seed, c.trials), tol);
    gate(codazzi_minimal_suite(c.seed, c.trials), tol);
    gate(simons_suite(c.seed, c.trials), tol);
    double f = weyl_split_residual_formal(c.model.name == "formal" ? c.model.g3_amp : 0.1);
    d.results["weyl_split_formal"] = f;
    d.check("weyl_split_formal", f, 0.0, tol);
  }
  d.results["suites"] = suites;
  if (all || c.suite == "v2") {
    ojson v = ojson::array();
    std::vector<double> y{0.9, 1.1, 0.6};
    for (const char* b : {"round", "random"}) {
      V2Options o;
      o.boundary = b;
      o.seed = unsigned(c.seed);
      auto r = volume_coefficient_v2(o, y);
      v.push_back({{"boundary", b}, {"fitted", r.fitted}, {"direct", r.direct}, {"target", r.target}, {"condition", r.condition}});
      d.check(std::string("v2.") + b + ".fitted", r.fitted, r.target, c.tol("v2"));
      d.check(std::string("v2.") + b + ".direct", r.direct, r.target, c.tol("v2"));
      if (std::string(b) == "round") d.check("v2.round.value", r.fitted, -0.75, c.tol("v2"));
    }
    d.results["v2"] = v;
  }
  if (all || c.suite == "graph") {
    double t = c.cap ? *c.cap : 0.3;
    ojson g = ojson::array();
    auto add = [&](const GraphExpansion& e, const std::string& tag) {
      g.push_back({{"route", e.route}, {"eta_M", e.eta_M}, {"c2", e.c2}, {"c2_target", e.c2_target},
                   {"c4_log", e.c4_log}, {"c4", e.c4}, {"rel_error", e.rel_error}, {"condition", e.condition}});
      d.check("graph." + tag, e.rel_error, 0.0, c.tol("graph"));
    };
    add(minimal_graph_expansion(t), "closed_form");
    add(minimal_graph_expansion_ode(1.0), "ode");
    d.results["graph"] = g;
  }
}

void run_sweep(const RunConfig& c, ReportDocument& d) {
  require_hyperbolic(c);
  ojson pts = ojson::array();
  double worst = 0;
  for (int i = 0; i < c.sweep.n; ++i) {
    double t = c.sweep.n == 1 ? c.sweep.t0 : c.sweep.t0 + (c.sweep.t1 - c.sweep.t0) * double(i) / double(c.sweep.n - 1);
    auto r = renormalized_volume_half(renvol_options(c, t));
    double rel = std::abs(r.fit.V - r.target_V) / std::abs(r.target_V);
    worst = std::max(worst, rel);
    pts.push_back({{"t", t}, {"V", r.fit.V}, {"target_V", r.target_V}, {"c0", r.fit.c0}, {"c2", r.fit.c2}, {"rel_error", rel}});
    d.row("V", r.fit.V, t);
  }
  d.results["sweep"] = pts;
  d.check("max_rel_error", worst, 0.0, c.tol("renvol"));
}

}  // namespace

ReportDocument run(const RunConfig& c) {
  validate_config(c);
  ReportDocument d;
  d.verification = c.verification;
  d.config = config_to_json(c);
  try {
    if (c.verification == "curvature") run_curvature(c, d);
    else if (c.verification == "gauss-bonnet") run_gauss_bonnet(c, d);
    else if (c.verification == "renvol") run_renvol(c, d);
    else if (c.verification == "gbrv") run_gbrv(c, d);
    else if (c.verification == "vary") run_vary(c, d);
    else if (c.verification == "jacobi") run_jacobi(c, d);
    else if (c.verification == "identities") run_identities(c, d);
    else run_sweep(c, d);
  } catch (const ConfigError&) {
    throw;
  } catch (const GeometryError& e) {
    d.results["error"] = {{"kind", e.kind()}, {"message", e.what()}};
    d.check_flag("completed", false, std::string(e.kind()) + ": " + e.what());
  } catch (const std::exception& e) {
    d.results["error"] = {{"kind", "exception"}, {"message", e.what()}};
    d.check_flag("completed", false, e.what());
  }
  return d;
}

}  // namespace rv
