#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "curvk/convex_function.hpp"
#include "curvk/support.hpp"

namespace curvk {

using json = nlohmann::json;

inline constexpr const char* kVersion = "curvk 1.0.0";

/// One experiment: a function label, an operation, its parameters, output
/// paths and a seed. Parameters are stored in canonical form (points as
/// arrays of numbers, reals as doubles, counts as integers), so a config read
/// from a file and one assembled from command-line flags compare equal.
struct ExperimentConfig {
  std::string fn;
  std::string op;
  json params = json::object();
  json outputs = json::object();  // optional "report" and "csv" paths
  std::uint64_t seed = 0;

  json to_json() const;
  /// Validates and canonicalises; throws InputError on any problem.
  static ExperimentConfig from_json(const json& j);

  friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
    return a.to_json() == b.to_json();
  }
};

/// Names of the operations accepted by `run`.
const std::vector<std::string>& operation_names();

/// Checks parameters and parses the function label without computing
/// anything. Throws InputError (malformed) or DomainError (out of range).
void validate(const ExperimentConfig& config);

struct RunReport {
  ExperimentConfig config;
  json results = json::object();
  double wall_seconds = 0.0;
  std::string verdict = "OK";  // OK, PASS, FAIL or N/A
  std::string version = kVersion;

  json to_json(bool include_wall_time = true) const;
  int exit_code() const { return verdict == "FAIL" ? 1 : 0; }
};

/// Validates, dispatches and writes any CSV artifact named in
/// config.outputs["csv"]. Relative output paths resolve against `out_dir`.
RunReport run(const ExperimentConfig& config, const std::string& out_dir = "");

/// Serialises +inf as the string "inf".
json number_json(double v);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// "paper-checks" or "invariants"; throws InputError for other names.
std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t seed = 0);

/// One line per check: "PASS  <name>  <detail>".
std::string format_check(const CheckResult& c);

/// A catalog function with a box of interior points where it is smooth,
/// at least 0.1 away from the domain boundary, for random sampling.
struct CatalogEntry {
  ConvexFunction f;
  Box region;
  bool c11 = false;  // gradient globally Lipschitz on the domain
};

/// Catalog functions used by the property suites.
std::vector<CatalogEntry> property_catalog();

}  // namespace curvk
