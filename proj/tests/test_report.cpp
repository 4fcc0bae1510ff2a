#include <cmath>
#include <sstream>

#include "doctest.h"
#include "rv/errors.hpp"
#include "rv/report.hpp"
#include "rv/tensor.hpp"

using namespace rv;

namespace {

std::string error_of(const ojson& j) {
  try {
    config_from_json(j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

int count_rows(const std::string& csv, const std::string& quantity) {
  std::istringstream in(csv);
  std::string line;
  int n = 0;
  while (std::getline(in, line))
    if (line.rfind(quantity + ",", 0) == 0) ++n;
  return n;
}

RunConfig renvol_config() {
  RunConfig c;
  c.verification = "renvol";
  c.cap = 0.0;
  return c;
}

}  // namespace

TEST_CASE("unknown keys are rejected and named") {
  CHECK(error_of(ojson::parse(R"({"modle": {}})")).find("modle") != std::string::npos);
  CHECK(error_of(ojson::parse(R"({"model": {"name": "hyperbolic", "radius": 2}})")).find("model.radius") != std::string::npos);
  CHECK(error_of(ojson::parse(R"({"numeric": {"ladder": {"eps0": 0.2, "n": 3}}})")).find("numeric.ladder.n") != std::string::npos);
  CHECK(error_of(ojson::parse(R"({"tolerances": {"renvl": 1e-3}})")).find("tolerances.renvl") != std::string::npos);
  CHECK(error_of(ojson::parse(R"({"numeric": {"epsilon": "small"}})")).find("numeric.epsilon") != std::string::npos);
  CHECK(error_of(ojson::parse(R"([1, 2])")) != "");
}

TEST_CASE("config values outside their ranges are rejected") {
  auto c = renvol_config();
  c.epsilon = 1.5;
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c = renvol_config();
  c.ladder.ratio = 1.1;
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c = renvol_config();
  c.verification = "frobnicate";
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c = renvol_config();
  c.model.name = "formal";
  CHECK_THROWS_AS(run(c), ConfigError);
  c = renvol_config();
  c.tolerances["renvol"] = 2.0;
  CHECK_THROWS_AS(validate_config(c), ConfigError);
}

TEST_CASE("config JSON round-trips") {
  auto c = renvol_config();
  c.ladder = {0.15, 0.75, 12};
  c.tolerances["renvol"] = 5e-4;
  c.model.name = "random";
  c.model.seed = 9;
  auto j = config_to_json(c);
  auto back = config_from_json(j);
  CHECK(config_to_json(back) == j);
  CHECK(back.ladder.rungs == 12);
  CHECK(back.tol("renvol") == 5e-4);
  CHECK(back.tol("c0") == 1e-4);
  CHECK(back.cap.has_value());
  CHECK(back.model.seed == 9);
}

TEST_CASE("renvol report: JSON document and ladder CSV") {
  auto d = run(renvol_config());
  CHECK(d.all_pass());
  auto j = ojson::parse(dump_json(d.to_json()));
  for (const char* k : {"verification", "label", "config", "results", "checks", "pass", "provenance"}) CHECK(j.contains(k));
  CHECK(j["label"] == "EXACT");
  CHECK(j["results"]["renvol"]["V"].get<double>() == doctest::Approx(2.0 * kPi * kPi / 3.0).epsilon(1e-6));
  CHECK(j["results"]["renvol"]["fit"]["rungs"].size() == 10);
  auto csv = d.to_csv();
  CHECK(csv.rfind("quantity,parameter,value,tolerance,pass\r\n", 0) == 0);
  CHECK(count_rows(csv, "rung") == 10);
  CHECK(count_rows(csv, "fit.eps^0") == 1);
}

TEST_CASE("reports are deterministic") {
  auto a = run(renvol_config());
  auto b = run(renvol_config());
  CHECK(dump_json(a.to_json()) == dump_json(b.to_json()));
  CHECK(a.to_csv() == b.to_csv());
}

TEST_CASE("t-sweep has one V row per t") {
  RunConfig c;
  c.verification = "sweep";
  c.sweep = {-0.4, 0.4, 5};
  auto d = run(c);
  CHECK(d.all_pass());
  CHECK(count_rows(d.to_csv(), "V") == 5);
}

TEST_CASE("CSV quoting follows RFC 4180") {
  ReportDocument d;
  d.row("a,b", 1.0);
  d.row("say \"hi\"", 2.0);
  auto csv = d.to_csv();
  CHECK(csv.find("\"a,b\",,1,,\r\n") != std::string::npos);
  CHECK(csv.find("\"say \"\"hi\"\"\",,2,,\r\n") != std::string::npos);
}

TEST_CASE("checks carry tolerances and pass flags") {
  ReportDocument d;
  CHECK(d.check("x", 1.0005, 1.0, 1e-3, true));
  CHECK_FALSE(d.check("y", 2.0, 1.0, 1e-3));
  CHECK_FALSE(d.check("z", NAN, 0.0, 1.0));
  CHECK_FALSE(d.all_pass());
  CHECK(d.checks.size() == 3);
  CHECK(d.checks[0]["tolerance"] == 1e-3);
}

TEST_CASE("numeric failures become failed flags, not exceptions") {
  RunConfig c;
  c.verification = "jacobi";
  c.jacobi_surface = "clifford";
  auto d = run(c);
  CHECK_FALSE(d.all_pass());
}

TEST_CASE("formal runs are labelled") {
  RunConfig c;
  c.verification = "vary";
  c.model.name = "formal";
  auto d = run(c);
  CHECK(d.formal);
  CHECK(d.to_json()["label"] == "FORMAL");
  CHECK(d.all_pass());
}
