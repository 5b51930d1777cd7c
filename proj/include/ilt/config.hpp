#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ilt/fbm.hpp"
#include "ilt/model.hpp"

namespace ilt::cli {

/// Invalid configuration: malformed document, unknown field, or a
/// constraint violation. Maps to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fully resolved run configuration. Every field has a value after
/// parsing (defaults applied and recorded); to_json() round-trips.
struct RunConfig {
  double h1 = 0.5;
  double h2 = 0.5;
  int d = 1;
  std::vector<int> k;  // length d
  double horizon = 1.0;
  double epsilon = 0.5;
  int grid_size = 256;
  int replicates = 2000;
  std::uint64_t seed = 42;
  std::string sampler = "circulant";  // or "cholesky"
  int halvings = 3;
  std::vector<int> moment_orders = {1, 2, 3, 4};
  int fuzz_cases = 1000;
  unsigned workers = 0;  // 0 = auto
  std::string out_dir = "out";

  ExperimentParams params() const;
  SamplerKind sampler_kind() const;
  nlohmann::ordered_json to_json() const;
};

/// Parses a JSON config document. Unknown fields are rejected by name;
/// constraint violations carry the offending field in the message.
RunConfig parse_config(const std::string& text);

/// Applies a parsed JSON object on top of cfg (used for flag overrides);
/// same strictness as parse_config.
void apply_overrides(RunConfig& cfg, const nlohmann::json& object);

}  // namespace ilt::cli
