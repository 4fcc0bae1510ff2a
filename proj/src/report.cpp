#include "rv/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "rv/errors.hpp"

namespace rv {

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t{
      {"renvol", 1e-3},          // relative, V against its target
      {"c0", 1e-4},              // relative
      {"c2", 1e-4},              // relative
      {"gauss_bonnet", 1e-3},    // relative to 4 pi^2 chi
      {"gbrv", 2e-3},            // times pi^2, absolute
      {"weight", 1e-4},
      {"covariance", 1e-4},
      {"v2", 1e-4},
      {"appendix", 1e-6},
      {"jacobi_cosh", 1e-5},
      {"jacobi_boundary", 1e-3},
      {"jacobi_zero", 1e-10},
      {"jacobi_unique", 1e-8},
      {"graph", 1e-2},
      {"dvdt", 1e-3},
      {"weyl_route", 1e-3},
      {"identity", 1e-6},
      {"einstein", 1e-6},
      {"isometry", 1e-6},
      {"cap_geodesy", 1e-8},
  };
  return t;
}

double RunConfig::tol(const std::string& key) const {
  if (auto it = tolerances.find(key); it != tolerances.end()) return it->second;
  auto& d = default_tolerances();
  auto it = d.find(key);
  if (it == d.end()) throw ConfigError("unknown tolerance key: " + key);
  return it->second;
}

namespace {

void reject_unknown(const ojson& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) throw ConfigError("unknown key '" + (where.empty() ? "" : where + ".") + it.key() + "'");
}

template <class T> T get_as(const ojson& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("bad value for key '" + key + "'");
  }
}

template <class T> void read(const ojson& j, const char* key, const std::string& where, T& out) {
  if (j.contains(key)) out = get_as<T>(j.at(key), where.empty() ? key : where + "." + key);
}

}  // namespace

RunConfig config_from_json(const ojson& j) {
  RunConfig c;
  reject_unknown(j, "", {"verification", "model", "surface", "numeric", "tolerances", "seed", "format", "out"});
  read(j, "verification", "", c.verification);
  read(j, "seed", "", c.seed);
  read(j, "format", "", c.format);
  read(j, "out", "", c.out);
  if (j.contains("model")) {
    const auto& m = j.at("model");
    reject_unknown(m, "model", {"name", "round_radius", "g3_amp", "seed", "amp"});
    read(m, "name", "model", c.model.name);
    read(m, "round_radius", "model", c.model.round_radius);
    read(m, "g3_amp", "model", c.model.g3_amp);
    read(m, "seed", "model", c.model.seed);
    read(m, "amp", "model", c.model.amp);
  }
  if (j.contains("surface")) {
    const auto& s = j.at("surface");
    reject_unknown(s, "surface", {"cap", "family", "jacobi_surface", "boundary_value"});
    if (s.contains("cap") && !s.at("cap").is_null()) c.cap = get_as<double>(s.at("cap"), "surface.cap");
    read(s, "family", "surface", c.family);
    read(s, "jacobi_surface", "surface", c.jacobi_surface);
    read(s, "boundary_value", "surface", c.boundary_value);
  }
  if (j.contains("numeric")) {
    const auto& n = j.at("numeric");
    reject_unknown(n, "numeric", {"epsilon", "route", "point", "ladder", "sweep", "suite", "trials", "delta", "dt"});
    read(n, "epsilon", "numeric", c.epsilon);
    read(n, "route", "numeric", c.route);
    if (n.contains("point")) c.point = get_as<std::vector<double>>(n.at("point"), "numeric.point");
    read(n, "suite", "numeric", c.suite);
    read(n, "trials", "numeric", c.trials);
    read(n, "delta", "numeric", c.delta);
    read(n, "dt", "numeric", c.dt);
    if (n.contains("ladder")) {
      const auto& l = n.at("ladder");
      reject_unknown(l, "numeric.ladder", {"eps0", "ratio", "rungs"});
      read(l, "eps0", "numeric.ladder", c.ladder.eps0);
      read(l, "ratio", "numeric.ladder", c.ladder.ratio);
      read(l, "rungs", "numeric.ladder", c.ladder.rungs);
    }
    if (n.contains("sweep")) {
      const auto& l = n.at("sweep");
      reject_unknown(l, "numeric.sweep", {"t0", "t1", "n"});
      read(l, "t0", "numeric.sweep", c.sweep.t0);
      read(l, "t1", "numeric.sweep", c.sweep.t1);
      read(l, "n", "numeric.sweep", c.sweep.n);
    }
  }
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    if (!t.is_object()) throw ConfigError("tolerances must be an object");
    auto& d = default_tolerances();
    for (auto it = t.begin(); it != t.end(); ++it) {
      if (!d.count(it.key())) throw ConfigError("unknown key 'tolerances." + it.key() + "'");
      c.tolerances[it.key()] = get_as<double>(it.value(), "tolerances." + it.key());
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  ojson j;
  try {
    j = ojson::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

ojson config_to_json(const RunConfig& c) {
  ojson j;
  j["verification"] = c.verification;
  ojson m;
  m["name"] = c.model.name;
  if (c.model.name == "hyperbolic-normal-form") m["round_radius"] = c.model.round_radius;
  if (c.model.name == "formal") m["g3_amp"] = c.model.g3_amp;
  if (c.model.name == "random") {
    m["seed"] = c.model.seed;
    m["amp"] = c.model.amp;
  }
  j["model"] = m;
  ojson s;
  s["cap"] = c.cap ? ojson(*c.cap) : ojson(nullptr);
  s["family"] = c.family;
  s["jacobi_surface"] = c.jacobi_surface;
  s["boundary_value"] = c.boundary_value;
  j["surface"] = s;
  ojson n;
  n["epsilon"] = c.epsilon;
  n["route"] = c.route;
  if (c.point) n["point"] = *c.point;
  n["ladder"] = {{"eps0", c.ladder.eps0}, {"ratio", c.ladder.ratio}, {"rungs", c.ladder.rungs}};
  n["sweep"] = {{"t0", c.sweep.t0}, {"t1", c.sweep.t1}, {"n", c.sweep.n}};
  n["suite"] = c.suite;
  n["trials"] = c.trials;
  n["delta"] = c.delta;
  n["dt"] = c.dt;
  j["numeric"] = n;
  ojson t = ojson::object();
  for (const auto& [k, v] : default_tolerances()) t[k] = c.tol(k);
  j["tolerances"] = t;
  j["seed"] = c.seed;
  j["format"] = c.format;
  return j;
}

void validate_config(const RunConfig& c) {
  static const std::set<std::string> verbs{"curvature", "gauss-bonnet", "renvol", "gbrv",
                                           "vary",      "jacobi",       "identities", "sweep"};
  if (!verbs.count(c.verification)) throw ConfigError("unknown verification '" + c.verification + "'");
  static const std::set<std::string> models{"hyperbolic", "hyperbolic-normal-form", "formal", "hopf", "random"};
  if (!models.count(c.model.name)) throw ConfigError("unknown model.name '" + c.model.name + "'");
  if (c.format != "json" && c.format != "csv") throw ConfigError("format must be json or csv");
  if (!(c.model.round_radius > 0.0 && c.model.round_radius <= 10.0)) throw ConfigError("model.round_radius out of range (0, 10]");
  if (!(std::abs(c.model.g3_amp) <= 1.0)) throw ConfigError("model.g3_amp out of range [-1, 1]");
  if (!(c.model.amp >= 0.0 && c.model.amp <= 0.5)) throw ConfigError("model.amp out of range [0, 0.5]");
  if (c.cap && !(std::abs(*c.cap) < 1.3)) throw ConfigError("surface.cap out of range |t| < 1.3");
  if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) throw ConfigError("numeric.epsilon out of range (0, 1)");
  if (c.route != "g_plus" && c.route != "g_bar") throw ConfigError("numeric.route must be g_plus or g_bar");
  if (c.point && c.point->size() != 4) throw ConfigError("numeric.point needs 4 coordinates");
  try {
    validate_ladder(c.ladder);
  } catch (const GeometryError& e) {
    throw ConfigError(std::string("numeric.ladder: ") + e.what());
  }
  if (c.ladder.rungs > 40) throw ConfigError("numeric.ladder.rungs out of range (<= 40)");
  if (!(c.sweep.n >= 1 && c.sweep.n <= 200)) throw ConfigError("numeric.sweep.n out of range [1, 200]");
  if (!(std::abs(c.sweep.t0) < 1.3 && std::abs(c.sweep.t1) < 1.3)) throw ConfigError("numeric.sweep out of range |t| < 1.3");
  static const std::set<std::string> suites{"all", "weights", "covariance", "algebra", "v2", "graph"};
  if (!suites.count(c.suite)) throw ConfigError("unknown numeric.suite '" + c.suite + "'");
  if (!(c.trials >= 1 && c.trials <= 10000)) throw ConfigError("numeric.trials out of range [1, 10000]");
  if (!(c.delta > 0.0 && c.delta <= 0.2)) throw ConfigError("numeric.delta out of range (0, 0.2]");
  if (!(c.dt > 0.0 && c.dt <= 0.05)) throw ConfigError("numeric.dt out of range (0, 0.05]");
  for (const auto& [k, v] : c.tolerances)
    if (!(v > 0.0 && v < 1.0)) throw ConfigError("tolerances." + k + " out of range (0, 1)");
  static const std::set<std::string> fams{"", "caps", "formal", "sphere", "cap", "random"};
  if (!fams.count(c.family)) throw ConfigError("unknown surface.family '" + c.family + "'");
  if (c.jacobi_surface != "equatorial" && c.jacobi_surface != "clifford")
    throw ConfigError("surface.jacobi_surface must be equatorial or clifford");
}

bool ReportDocument::check(const std::string& name, double value, double target, double tol, bool relative) {
  double err = std::abs(value - target);
  if (relative && target != 0.0) err /= std::abs(target);
  bool ok = std::isfinite(err) && err <= tol;
  ojson c;
  c["name"] = name;
  c["value"] = value;
  c["target"] = target;
  c["error"] = err;
  c["relative"] = relative;
  c["tolerance"] = tol;
  c["pass"] = ok;
  checks.push_back(c);
  rows.push_back({name, std::nullopt, value, tol, ok});
  return ok;
}

bool ReportDocument::check_flag(const std::string& name, bool ok, const std::string& note) {
  ojson c;
  c["name"] = name;
  c["pass"] = ok;
  if (!note.empty()) c["note"] = note;
  checks.push_back(c);
  rows.push_back({name, std::nullopt, ok ? 1.0 : 0.0, std::nullopt, ok});
  return ok;
}

void ReportDocument::row(const std::string& q, double v, std::optional<double> param) {
  rows.push_back({q, param, v, std::nullopt, std::nullopt});
}

bool ReportDocument::all_pass() const {
  for (const auto& c : checks)
    if (!c.at("pass").get<bool>()) return false;
  return true;
}

ojson ReportDocument::to_json() const {
  ojson j;
  j["verification"] = verification;
  j["label"] = formal ? "FORMAL" : "EXACT";
  j["config"] = config;
  j["results"] = results;
  j["checks"] = checks;
  j["pass"] = all_pass();
  ojson p;
  p["artifact_version"] = kArtifactVersion;
  p["json_library"] = "nlohmann/json " + std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                      std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  p["seed"] = config.contains("seed") ? config.at("seed") : ojson(nullptr);
  p["ladder"] = config.contains("numeric") ? config.at("numeric").at("ladder") : ojson(nullptr);
  j["provenance"] = p;
  return j;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char ch : s) {
    if (ch == '"') o += '"';
    o += ch;
  }
  return o + "\"";
}
}  // namespace

std::string ReportDocument::to_csv() const {
  std::ostringstream o;
  o << "quantity,parameter,value,tolerance,pass\r\n";
  for (const auto& r : rows) {
    o << csv_field(r.quantity) << ',' << (r.parameter ? format_double(*r.parameter) : "") << ','
      << format_double(r.value) << ',' << (r.tolerance ? format_double(*r.tolerance) : "") << ','
      << (r.pass ? (*r.pass ? "true" : "false") : "") << "\r\n";
  }
  return o.str();
}

ojson fit_to_json(const SeriesFit& f) {
  ojson j;
  ojson basis = ojson::array(), coeffs = ojson::array();
  for (std::size_t i = 0; i < f.basis.size(); ++i) {
    basis.push_back(f.basis[i].label());
    coeffs.push_back(f.coeffs[i]);
  }
  j["basis"] = basis;
  j["coefficients"] = coeffs;
  j["c0"] = f.c0;
  j["c2"] = f.c2;
  j["c_log"] = f.c_log;
  j["V"] = f.V;
  j["residual_norm"] = f.residual_norm;
  j["condition"] = f.condition;
  j["drop_change"] = f.drop_change;
  j["stable"] = f.stable;
  ojson rungs = ojson::array();
  for (const auto& r : f.rungs) rungs.push_back({{"eps", r.eps}, {"value", r.value}});
  j["rungs"] = rungs;
  return j;
}

void fit_rows(ReportDocument& d, const SeriesFit& f, const std::string& prefix) {
  for (const auto& r : f.rungs) d.row("rung", r.value, r.eps);
  for (std::size_t i = 0; i < f.basis.size(); ++i) d.row(prefix + "." + f.basis[i].label(), f.coeffs[i]);
  d.row(prefix + ".residual_norm", f.residual_norm);
  d.row(prefix + ".condition", f.condition);
}

std::string dump_json(const ojson& j) { return j.dump(2) + "\n"; }

}  // namespace rv
