#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "curvk/parallel.hpp"
#include "curvk/runner.hpp"

using namespace curvk;

namespace {

ExperimentConfig config(const std::string& text) { return ExperimentConfig::from_json(json::parse(text)); }

}  // namespace

TEST_CASE("kappa on quad:3 reports 3") {
  const auto rep = run(config(R"({"fn": "quad:3", "op": "kappa", "params": {"at": 0}})"));
  CHECK(rep.results.at("value").get<double>() == doctest::Approx(3.0));
  CHECK(rep.exit_code() == 0);
  CHECK(rep.version == kVersion);
}

TEST_CASE("drop on the pathological function") {
  const auto rep = run(config(R"({"fn": "pathological:16", "op": "drop", "params": {"center": 0, "r": 1}})"));
  CHECK(rep.results.at("height").get<double>() == doctest::Approx(1.0));
  CHECK(rep.results.at("contacts").size() == 1);
  CHECK(rep.verdict == "PASS");
}

TEST_CASE("density on quad:1") {
  const auto rep = run(config(R"({"fn": "quad:1", "op": "density", "params": {"at": 0, "k": 2}})"));
  CHECK(rep.verdict == "PASS");
  CHECK(rep.results.at("theorem").at("bound").get<double>() == doctest::Approx(0.25));
}

TEST_CASE("infinity is the string inf") {
  const auto rep = run(config(R"({"fn": "power:1:4/3", "op": "kappa", "params": {"at": 0}})"));
  CHECK(rep.results.at("value") == "inf");
  CHECK(number_json(-INFINITY) == "-inf");
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(config(R"({"fn": "quad:3", "op": "nope"})"), InputError);
  CHECK_THROWS_AS(config(R"({"fn": "quad:3", "op": "kappa"})"), InputError);
  CHECK_THROWS_AS(config(R"({"fn": "quad:3", "op": "kappa", "params": {"at": 0, "zz": 1}})"), InputError);
  CHECK_THROWS_AS(config(R"({"op": "kappa", "params": {"at": 0}})"), InputError);
  CHECK_THROWS_AS(config(R"({"fn": "quad:3", "op": "kappa", "params": {"at": 0, "count": 1.5}})"), InputError);
  CHECK_THROWS_AS(config(R"([1, 2])"), InputError);
  CHECK_THROWS_AS(run(config(R"({"fn": "bogus", "op": "kappa", "params": {"at": 0}})")), InputError);
  CHECK_THROWS_AS(run(config(R"({"fn": "quad:3", "op": "kappa", "params": {"at": "0,1"}})")), InputError);
  CHECK_THROWS_AS(run(config(R"({"fn": "quad:3", "op": "drop", "params": {"center": 0, "r": -1}})")), DomainError);
  CHECK_THROWS_AS(run(config(R"({"op": "suite", "params": {"name": "unknown"}})")), InputError);
  CHECK_THROWS_AS(run_suite("unknown"), InputError);
}

TEST_CASE("config round trip and canonical parameters") {
  const auto a = config(R"({"fn": "quad:1,2", "op": "kappa", "params": {"at": "1/2,0", "count": "10"}, "seed": 4})");
  const auto b = config(R"({"fn": "quad:1,2", "op": "kappa", "params": {"at": [0.5, 0], "count": 10}, "seed": 4})");
  CHECK(a == b);
  CHECK(ExperimentConfig::from_json(a.to_json()) == a);
  CHECK(json::parse(a.to_json().dump()) == a.to_json());
}

TEST_CASE("report JSON and CSV artifacts") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "curvk_runner_test";
  fs::remove_all(dir);
  const auto rep = run(config(R"({"fn": "quad:1", "op": "xr", "params": {"r": 0.5, "centers": 9, "probes": 129},
                                  "outputs": {"report": "xr.json", "csv": "xr.csv"}})"),
                       dir.string());
  REQUIRE(fs::exists(dir / "xr.json"));
  REQUIRE(fs::exists(dir / "xr.csv"));
  std::ifstream csv(dir / "xr.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "x,center_x,height");
  std::ifstream js(dir / "xr.json");
  const auto j = json::parse(js);
  CHECK(j.at("config") == rep.config.to_json());
  CHECK(j.contains("wall_seconds"));
  fs::remove_all(dir);
}

TEST_CASE("conjugate from a grid file") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "curvk_runner_grid";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream os(dir / "in.csv");
    os << "x,value\n";
    for (int i = 0; i <= 20; ++i) os << (-1.0 + 0.1 * i) << ',' << 0.5 * (-1.0 + 0.1 * i) * (-1.0 + 0.1 * i) << '\n';
  }
  json j = json::parse(R"({"op": "conjugate", "outputs": {"csv": "out.csv"}})");
  j["params"]["grid"] = (dir / "in.csv").string();
  const auto rep = run(ExperimentConfig::from_json(j), dir.string());
  CHECK(rep.results.at("bruteforce_max_deviation").get<double>() <= 1e-9);
  CHECK(fs::exists(dir / "out.csv"));
  fs::remove_all(dir);
}

TEST_CASE("property: payload is independent of the thread count") {
  const auto c = config(R"({"fn": "hemisphere:0,0:1:1", "op": "kappa", "params": {"at": "0.3,0.2"}})");
  set_thread_count(1);
  const auto a = run(c).to_json(false).dump();
  set_thread_count(3);
  const auto b = run(c).to_json(false).dump();
  set_thread_count(1);
  CHECK(a == b);
}

TEST_CASE("suites") {
  const auto checks = run_suite("paper-checks");
  CHECK(checks.size() >= 15);
  for (const auto& c : checks) CHECK_MESSAGE(c.pass, format_check(c));
  CHECK(format_check({"x", true, "d"}) == "PASS  x  (d)");
  CHECK(format_check({"x", false, ""}) == "FAIL  x");
}
