// Command-line front end: one subcommand per verification, JSON or CSV report out.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rv/errors.hpp"
#include "rv/report.hpp"

namespace {

std::vector<double> split_numbers(const std::string& s, std::size_t n, const std::string& flag) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw rv::ConfigError("bad number '" + item + "' in " + flag);
    }
  }
  if (v.size() != n) throw rv::ConfigError(flag + " expects " + std::to_string(n) + " comma-separated numbers");
  return v;
}

struct Flags {
  std::string config, model, ladder, out, format, family, surface, route, point, sweep, suite;
  double cap = 0, epsilon = 0, boundary_value = 0, g3_amp = 0, round_radius = 0, delta = 0, dt = 0;
  std::uint64_t seed = 0;
  int trials = 0;
  bool whole = false;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"renormalized volume and corner Gauss-Bonnet verifications"};
  app.require_subcommand(1);
  Flags f;
  std::map<std::string, CLI::Option*> opt;
  const char* verbs[] = {"curvature", "gauss-bonnet", "renvol", "gbrv", "vary", "jacobi", "identities", "sweep"};
  std::vector<CLI::App*> subs;
  for (const char* v : verbs) {
    auto* s = app.add_subcommand(v, std::string("run the ") + v + " verification");
    subs.push_back(s);
  }
  // every subcommand takes the same flags; ones a verification ignores are echoed in the config
  for (auto* s : subs) {
    auto add = [&](const std::string& k, CLI::Option* o) { opt[s->get_name() + k] = o; };
    add("config", s->add_option("--config", f.config, "JSON config file (flags win)"));
    add("model", s->add_option("--model", f.model, "hyperbolic | hyperbolic-normal-form | formal | hopf | random"));
    add("cap", s->add_option("--cap", f.cap, "latitude t of the dividing cap"));
    add("whole", s->add_flag("--whole-ball", f.whole, "no dividing cap"));
    add("epsilon", s->add_option("--epsilon", f.epsilon, "truncation epsilon"));
    add("ladder", s->add_option("--ladder", f.ladder, "eps0,ratio,rungs"));
    add("seed", s->add_option("--seed", f.seed, "seed for randomized suites and the random model"));
    add("out", s->add_option("--out", f.out, "output directory (default stdout)"));
    add("format", s->add_option("--format", f.format, "json | csv"));
    add("family", s->add_option("--family", f.family, "vary: caps | formal | sphere | cap | random"));
    add("surface", s->add_option("--surface", f.surface, "jacobi: equatorial | clifford"));
    add("boundary", s->add_option("--boundary-value", f.boundary_value, "jacobi: constant boundary data"));
    add("g3", s->add_option("--g3-amp", f.g3_amp, "formal model g3 amplitude"));
    add("radius", s->add_option("--round-radius", f.round_radius, "hyperbolic-normal-form boundary radius"));
    add("route", s->add_option("--route", f.route, "gauss-bonnet: g_plus | g_bar"));
    add("point", s->add_option("--point", f.point, "curvature: x0,x1,x2,x3"));
    add("sweep", s->add_option("--sweep", f.sweep, "sweep: t0,t1,n"));
    add("suite", s->add_option("--suite", f.suite, "identities: all | weights | covariance | algebra | v2 | graph"));
    add("trials", s->add_option("--trials", f.trials, "trials per randomized suite"));
    add("delta", s->add_option("--delta", f.delta, "vary: t step of the central difference"));
    add("dt", s->add_option("--dt", f.dt, "vary: step of the appendix finite differences"));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  CLI::App* sub = app.get_subcommands().front();
  std::string verb = sub->get_name();
  auto given = [&](const std::string& k) { return opt.at(verb + k)->count() > 0; };
  try {
    rv::RunConfig c;
    if (given("config")) c = rv::load_config(f.config);
    if (!c.verification.empty() && c.verification != verb)
      throw rv::ConfigError("config verification '" + c.verification + "' does not match subcommand " + verb);
    c.verification = verb;
    if (given("model")) c.model.name = f.model;
    if (given("cap") && given("whole")) throw rv::ConfigError("--cap and --whole-ball are exclusive");
    if (given("cap")) c.cap = f.cap;
    if (given("whole")) c.cap.reset();
    if (given("epsilon")) c.epsilon = f.epsilon;
    if (given("ladder")) {
      auto v = split_numbers(f.ladder, 3, "--ladder");
      if (v[2] != double(int(v[2]))) throw rv::ConfigError("--ladder rung count must be an integer");
      c.ladder = {v[0], v[1], int(v[2])};
    }
    if (given("seed")) {
      c.seed = f.seed;
      c.model.seed = f.seed;
    }
    if (given("out")) c.out = f.out;
    if (given("format")) c.format = f.format;
    if (given("family")) c.family = f.family;
    if (given("surface")) c.jacobi_surface = f.surface;
    if (given("boundary")) c.boundary_value = f.boundary_value;
    if (given("g3")) c.model.g3_amp = f.g3_amp;
    if (given("radius")) c.model.round_radius = f.round_radius;
    if (given("route")) c.route = f.route;
    if (given("point")) c.point = split_numbers(f.point, 4, "--point");
    if (given("sweep")) {
      auto v = split_numbers(f.sweep, 3, "--sweep");
      c.sweep = {v[0], v[1], int(v[2])};
    }
    if (given("suite")) c.suite = f.suite;
    if (given("trials")) c.trials = f.trials;
    if (given("delta")) c.delta = f.delta;
    if (given("dt")) c.dt = f.dt;

    auto doc = rv::run(c);
    std::string text = c.format == "csv" ? doc.to_csv() : rv::dump_json(doc.to_json());
    if (c.out.empty()) {
      std::cout << text;
    } else {
      std::filesystem::create_directories(c.out);
      auto path = std::filesystem::path(c.out) / (verb + (c.format == "csv" ? ".csv" : ".json"));
      std::ofstream o(path, std::ios::binary);
      if (!o) {
        std::cerr << "error: cannot write " << path.string() << "\n";
        return 1;
      }
      o << text;
      std::cerr << path.string() << "\n";
    }
    return doc.all_pass() ? 0 : 1;
  } catch (const rv::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
}
