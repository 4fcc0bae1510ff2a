#pragma once

// Run configuration, report documents and their JSON / CSV serialization.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rv/fit.hpp"

namespace rv {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kArtifactVersion = "1.0.0";

struct ModelSpec {
  std::string name = "hyperbolic";  // hyperbolic | hyperbolic-normal-form | formal | hopf | random
  double round_radius = 1.0;        // hyperbolic-normal-form
  double g3_amp = 0.1;              // formal
  std::uint64_t seed = 1;           // random
  double amp = 0.1;                 // random
};

struct SweepSpec {
  double t0 = -0.6, t1 = 0.6;
  int n = 7;
};

struct RunConfig {
  std::string verification;  // subcommand
  ModelSpec model{};
  std::optional<double> cap;  // latitude t of the dividing cap; none = whole ball
  std::string family;         // vary: caps | formal | sphere | cap | random (empty: from model)
  std::string jacobi_surface = "equatorial";
  double boundary_value = 1.0;
  double epsilon = 0.1;
  std::string route = "g_plus";  // gauss-bonnet: g_plus | g_bar
  std::optional<std::vector<double>> point;
  Ladder ladder{};
  SweepSpec sweep{};
  std::string suite = "all";  // identities: all | weights | covariance | algebra | v2 | graph
  int trials = 50;
  double delta = 0.05;
  double dt = 1e-3;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out;
  std::map<std::string, double> tolerances;  // overrides of default_tolerances()
  double tol(const std::string& key) const;
};

const std::map<std::string, double>& default_tolerances();

// strict JSON loading; throws ConfigError naming the offending key
RunConfig config_from_json(const ojson& j);
RunConfig load_config(const std::string& path);
ojson config_to_json(const RunConfig& c);
void validate_config(const RunConfig& c);

struct Row {
  std::string quantity;
  std::optional<double> parameter;
  double value = 0.0;
  std::optional<double> tolerance;
  std::optional<bool> pass;
};

struct ReportDocument {
  std::string verification;
  ojson config;
  ojson results = ojson::object();
  ojson checks = ojson::array();
  std::vector<Row> rows;
  bool formal = false;

  // |value - target| <= tol (relative to |target| when relative and target != 0)
  bool check(const std::string& name, double value, double target, double tol, bool relative = false);
  bool check_flag(const std::string& name, bool ok, const std::string& note = "");
  void row(const std::string& q, double v, std::optional<double> param = std::nullopt);
  bool all_pass() const;
  ojson to_json() const;
  std::string to_csv() const;
};

ojson fit_to_json(const SeriesFit& f);
void fit_rows(ReportDocument& d, const SeriesFit& f, const std::string& prefix = "fit");

ReportDocument run(const RunConfig& c);

// JSON dump used for files and stdout, two-space indent and trailing newline
std::string dump_json(const ojson& j);

// compact double text shared by JSON-independent outputs
std::string format_double(double v);

}  // namespace rv
