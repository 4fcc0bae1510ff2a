#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  auto p = fs::temp_directory_path() / ("rvtool_test_" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

int run_tool(const std::string& args, const fs::path& out = {}, const fs::path& err = {}) {
  std::string cmd = std::string("\"") + RVTOOL_PATH + "\" " + args;
  cmd += " > " + (out.empty() ? std::string("/dev/null") : "\"" + out.string() + "\"");
  cmd += " 2> " + (err.empty() ? std::string("/dev/null") : "\"" + err.string() + "\"");
  int s = std::system(cmd.c_str());
  return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("renvol on the equatorial split passes with exit 0") {
  auto d = scratch();
  CHECK(run_tool("renvol --model hyperbolic --cap 0.0", d / "r.json") == 0);
  auto s = slurp(d / "r.json");
  CHECK(s.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("gauss-bonnet example passes") {
  CHECK(run_tool("gauss-bonnet --model hyperbolic --cap 0.0 --epsilon 0.2") == 0);
}

TEST_CASE("malformed config exits 2 and names the key") {
  auto d = scratch();
  {
    std::ofstream o(d / "bad.json");
    o << R"({"model": {"name": "hyperbolic", "colour": "red"}})";
  }
  CHECK(run_tool("renvol --config \"" + (d / "bad.json").string() + "\"", {}, d / "err.txt") == 2);
  CHECK(slurp(d / "err.txt").find("model.colour") != std::string::npos);
  {
    std::ofstream o(d / "broken.json");
    o << "{ not json";
  }
  CHECK(run_tool("renvol --config \"" + (d / "broken.json").string() + "\"") == 2);
  CHECK(run_tool("renvol --model nowhere") == 2);
  CHECK(run_tool("renvol --ladder 0.2,0.8") == 2);
  CHECK(run_tool("renvol --no-such-flag") == 2);
  CHECK(run_tool("") == 2);
}

TEST_CASE("failed flag exits 1") {
  CHECK(run_tool("jacobi --surface clifford") == 1);
  CHECK(run_tool("renvol --cap 0.0 --ladder 0.2,0.8,10 --seed 1 --format json") == 0);
}

TEST_CASE("identical config and seed give identical bytes") {
  auto d = scratch();
  for (const char* sub : {"a", "b"}) {
    CHECK(run_tool(std::string("identities --suite algebra --trials 5 --seed 3 --out \"") + (d / sub).string() + "\"") == 0);
    CHECK(run_tool(std::string("renvol --cap 0.3 --format csv --out \"") + (d / sub).string() + "\"") == 0);
  }
  CHECK(slurp(d / "a" / "identities.json") == slurp(d / "b" / "identities.json"));
  CHECK(slurp(d / "a" / "renvol.csv") == slurp(d / "b" / "renvol.csv"));
  CHECK_FALSE(slurp(d / "a" / "renvol.csv").empty());
}

TEST_CASE("flags win over the config file") {
  auto d = scratch();
  {
    std::ofstream o(d / "c.json");
    o << R"({"surface": {"cap": 0.3}, "numeric": {"ladder": {"eps0": 0.2, "ratio": 0.8, "rungs": 8}}})";
  }
  CHECK(run_tool("renvol --config \"" + (d / "c.json").string() + "\" --cap 0.0", d / "o.json") == 0);
  auto s = slurp(d / "o.json");
  CHECK(s.find("\"cap\": 0.0") != std::string::npos);
  CHECK(s.find("\"rungs\": 8") != std::string::npos);
}

TEST_CASE("sweep CSV has one V row per t") {
  auto d = scratch();
  CHECK(run_tool("sweep --sweep -0.5,0.5,6 --format csv", d / "s.csv") == 0);
  std::istringstream in(slurp(d / "s.csv"));
  std::string line;
  int n = 0;
  while (std::getline(in, line))
    if (line.rfind("V,", 0) == 0) ++n;
  CHECK(n == 6);
  fs::remove_all(d);
}
