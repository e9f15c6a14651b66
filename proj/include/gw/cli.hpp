#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gw/master.hpp"
#include "json.hpp"

namespace gw::cli {

using nlohmann::json;

/// Usage and configuration problems; the CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thresholds used by verify (and reported by gaudin/bethe).
struct Tolerances {
  double reality = 1e-8;
  double wronskian = 1e-8;
  double eigen = 1e-9;
  double commutation = 1e-10;
  double symmetry = 1e-11;
  double singular = 1e-9;
};

struct RunConfig {
  std::string command;
  /// Exponents at infinity; empty when the spec is given explicitly.
  std::vector<int> d;
  /// Explicit master-function data (r, gram, weights, l) from a config file.
  std::optional<MasterSpec> explicit_spec;
  /// Points z; defaults to 0, 1, ..., n - 1 when absent.
  std::optional<std::vector<cplx>> z;
  int seeds = 2000;
  std::uint64_t rng_seed = 1;
  /// 0 means all available cores.
  int jobs = 0;
  int samples = 5;
  Tolerances tol;
  /// Subset of verify checks to run; empty means all.
  std::vector<std::string> checks;
  std::string output;
  /// Input report for `report`.
  std::string input;
};

/// Names accepted in RunConfig::checks.
const std::vector<std::string>& check_names();

/// Reads the keys of a config file into cfg. Throws ConfigError on unknown
/// keys, wrong types or non-positive tolerances.
void apply_config_json(const json& j, RunConfig& cfg);
/// Sets one tolerance from "name=value".
void apply_tolerance(const std::string& assignment, RunConfig& cfg);
json config_to_json(const RunConfig& cfg);

/// The spec selected by cfg, with defaults filled in. Throws ConfigError.
MasterSpec resolve_spec(const RunConfig& cfg);

json cmd_count(const RunConfig& cfg);
json cmd_solve(const RunConfig& cfg);
json cmd_bethe(const RunConfig& cfg);
json cmd_gaudin(const RunConfig& cfg);
/// Full pipeline; "pass" is true iff every selected check passed.
json cmd_verify(const RunConfig& cfg);

/// Plain-text summary of a solve, bethe, gaudin or verify report.
std::string format_report(const json& report);

/// Entry point used by the gw binary; returns the process exit code
/// (0 pass, 1 failed check, 2 usage or config error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gw::cli
