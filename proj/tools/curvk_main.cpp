#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "curvk/parallel.hpp"
#include "curvk/runner.hpp"

namespace {

using curvk::json;

struct FlagSpec {
  const char* name;
  const char* help;
  bool is_switch = false;
};

// Flags per subcommand. Values are kept as text and canonicalised by the
// config parser, so flags and config files go through the same validation.
const std::map<std::string, std::vector<FlagSpec>>& flag_specs() {
  static const std::map<std::string, std::vector<FlagSpec>> s = {
      {"kappa",
       {{"at", "evaluation point"},
        {"eps0", "largest eps"},
        {"ratio", "eps ratio"},
        {"count", "number of eps values"},
        {"dirs", "number of directions"},
        {"tail", "tail window"}}},
      {"conjugate", {{"grid", "input grid CSV"}, {"points", "samples per axis"}, {"slopes", "slopes per axis"}}},
      {"drop", {{"center", "sphere centre"}, {"r", "radius"}, {"probes", "probe nodes per axis"}}},
      {"xr",
       {{"r", "radius"},
        {"at", "normalisation point"},
        {"centers", "centre nodes per axis"},
        {"probes", "probe nodes per axis"},
        {"halfwidth", "half-width of the centre box"}}},
      {"density",
       {{"at", "base point"}, {"k", "threshold"}, {"eps0", "largest radius"}, {"radii", "number of radii"},
        {"cells", "lattice cells per axis"}}},
      {"qconv", {{"at", "base point"}, {"m", "modulus"}, {"sub", "check the sub-quadratic sense", true},
                 {"eps", "ball radius"}}},
      {"thm19", {{"at", "base point"}, {"k", "threshold"}}},
      {"propA5", {{"at", "base point"}, {"r", "osculating radius at the base point"}}},
      {"suite", {{"name", "paper-checks or invariants"}}},
  };
  return s;
}

json read_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw curvk::InputError("cannot read config '" + path + "'");
  try {
    return json::parse(is);
  } catch (const json::parse_error& e) {
    throw curvk::InputError("malformed config '" + path + "': " + e.what());
  }
}

int emit(const curvk::RunReport& rep) {
  if (rep.config.op == "suite") {
    for (const auto& check : rep.results.at("checks")) {
      curvk::CheckResult c{check.at("name"), check.at("pass"), check.at("detail")};
      std::cout << curvk::format_check(c) << '\n';
    }
    std::cout << rep.results.at("passed").get<int>() << " passed, " << rep.results.at("failed").get<int>()
              << " failed\n";
  } else {
    std::cout << rep.to_json(false).dump(2) << '\n';
  }
  return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for the generalized largest eigenvalue of convex functions"};
  app.set_version_flag("--version", curvk::kVersion);
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string config_path, out_dir;
  int threads = 1;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "experiment config (JSON)");
  app.add_option("--out", out_dir, "directory for reports and artifacts");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed for randomised sampling");

  struct Sub {
    CLI::App* app;
    std::string fn, report, csv;
    std::map<std::string, std::string> values;
    bool sub_flag = false;
  };
  std::map<std::string, Sub> subs;
  for (const auto& [op, flags] : flag_specs()) {
    auto& s = subs[op];
    s.app = app.add_subcommand(op, "run the " + op + " operation");
    if (op != "suite") s.app->add_option("--fn", s.fn, "function label");
    s.app->add_option("--report", s.report, "report JSON path");
    if (op == "conjugate" || op == "xr") {
      // For these subcommands --out names the CSV artifact.
      s.app->add_option("--out,--csv", s.csv, "CSV output path");
    }
    for (const auto& f : flags) {
      if (f.is_switch) {
        s.app->add_flag(std::string("--") + f.name, s.sub_flag, f.help);
      } else {
        const std::string spec = op == "suite" ? std::string(f.name) + ",--" + f.name : std::string("--") + f.name;
        s.app->add_option(spec, s.values[f.name], f.help);
      }
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    json cfg = json::object();
    if (!config_path.empty()) cfg = read_config(config_path);
    if (!cfg.is_object()) throw curvk::InputError("config must be a JSON object");

    for (auto& [op, s] : subs) {
      if (!s.app->parsed()) continue;
      if (cfg.contains("op") && cfg.at("op") != op) {
        throw curvk::InputError("config operation '" + cfg.at("op").dump() + "' conflicts with subcommand " + op);
      }
      cfg["op"] = op;
      if (!cfg.contains("params")) cfg["params"] = json::object();
      for (const auto& [name, value] : s.values) {
        if (s.app->count("--" + name) > 0) cfg["params"][name] = value;
      }
      if (s.sub_flag) cfg["params"]["sub"] = true;
      if (!s.fn.empty()) cfg["fn"] = s.fn;
      if (!s.report.empty()) cfg["outputs"]["report"] = s.report;
      if (!s.csv.empty()) cfg["outputs"]["csv"] = s.csv;
    }
    if (!cfg.contains("op")) {
      std::cerr << app.help();
      return 2;
    }
    if (seed) cfg["seed"] = *seed;

    curvk::set_thread_count(threads);
    const auto config = curvk::ExperimentConfig::from_json(cfg);
    const auto report = curvk::run(config, out_dir);
    return emit(report);
  } catch (const curvk::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
  } catch (const curvk::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
  } catch (const curvk::ResolutionError& e) {
    std::cerr << "resolution error: " << e.what() << '\n';
  } catch (const json::exception& e) {
    std::cerr << "malformed config: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 2;
}
