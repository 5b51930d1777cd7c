#include "ilt/config.hpp"

#include <set>

namespace ilt::cli {

namespace {

const std::set<std::string>& known_fields() {
  static const std::set<std::string> fields = {
      "h1",   "h2",      "d",        "k",           "T",          "epsilon",
      "M",    "N",       "seed",     "sampler",     "halvings",   "moment_orders",
      "fuzz_cases", "workers", "out"};
  return fields;
}

template <typename T>
T get_field(const nlohmann::json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config: field '" + key + "' has the wrong type");
  }
}

void validate(const RunConfig& cfg) {
  auto fail = [](const std::string& msg) { throw ConfigError("config: " + msg); };
  if (!(cfg.h1 > 0.0 && cfg.h1 < 1.0)) fail("h1 must lie strictly in (0,1)");
  if (!(cfg.h2 > 0.0 && cfg.h2 < 1.0)) fail("h2 must lie strictly in (0,1)");
  if (cfg.d < 1) fail("d must be >= 1");
  if (static_cast<int>(cfg.k.size()) != cfg.d) fail("k must have exactly d entries");
  for (int v : cfg.k)
    if (v < 0) fail("k entries must be nonnegative");
  if (!(cfg.horizon > 0.0)) fail("T must be > 0");
  // epsilon = 0 stays parseable: the oracle command evaluates the limit.
  // Commands that simulate at a fixed width require epsilon > 0 themselves.
  if (!(cfg.epsilon >= 0.0)) fail("epsilon must be >= 0");
  if (cfg.grid_size < 1) fail("M must be >= 1");
  if (cfg.replicates < 1) fail("N must be >= 1");
  if (cfg.sampler != "circulant" && cfg.sampler != "cholesky")
    fail("sampler must be 'circulant' or 'cholesky'");
  if (cfg.halvings < 2) fail("halvings must be >= 2");
  if (cfg.moment_orders.empty()) fail("moment_orders must be nonempty");
  for (int n : cfg.moment_orders)
    if (n < 1 || n > 6) fail("moment orders must be in [1, 6]");
  if (cfg.fuzz_cases < 1) fail("fuzz_cases must be >= 1");
  if (cfg.out_dir.empty()) fail("out must be a nonempty path");
}

}  // namespace

ExperimentParams RunConfig::params() const {
  return ExperimentParams(HurstPair(h1, h2), MultiIndex(k), horizon, epsilon, grid_size,
                          replicates, seed);
}

SamplerKind RunConfig::sampler_kind() const {
  return sampler == "cholesky" ? SamplerKind::Cholesky : SamplerKind::Circulant;
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["h1"] = h1;
  j["h2"] = h2;
  j["d"] = d;
  j["k"] = k;
  j["T"] = horizon;
  j["epsilon"] = epsilon;
  j["M"] = grid_size;
  j["N"] = replicates;
  j["seed"] = seed;
  j["sampler"] = sampler;
  j["halvings"] = halvings;
  j["moment_orders"] = moment_orders;
  j["fuzz_cases"] = fuzz_cases;
  j["workers"] = workers;
  j["out"] = out_dir;
  return j;
}

void apply_overrides(RunConfig& cfg, const nlohmann::json& object) {
  if (!object.is_object()) throw ConfigError("config: document must be a JSON object");

  bool d_given = object.contains("d");
  bool k_given = object.contains("k");

  for (const auto& [key, value] : object.items()) {
    (void)value;
    if (!known_fields().count(key)) throw ConfigError("config: unknown field '" + key + "'");
  }

  if (object.contains("h1")) cfg.h1 = get_field<double>(object, "h1");
  if (object.contains("h2")) cfg.h2 = get_field<double>(object, "h2");
  if (d_given) cfg.d = get_field<int>(object, "d");
  if (k_given) cfg.k = get_field<std::vector<int>>(object, "k");
  if (object.contains("T")) cfg.horizon = get_field<double>(object, "T");
  if (object.contains("epsilon")) cfg.epsilon = get_field<double>(object, "epsilon");
  if (object.contains("M")) cfg.grid_size = get_field<int>(object, "M");
  if (object.contains("N")) cfg.replicates = get_field<int>(object, "N");
  if (object.contains("seed")) cfg.seed = get_field<std::uint64_t>(object, "seed");
  if (object.contains("sampler")) cfg.sampler = get_field<std::string>(object, "sampler");
  if (object.contains("halvings")) cfg.halvings = get_field<int>(object, "halvings");
  if (object.contains("moment_orders"))
    cfg.moment_orders = get_field<std::vector<int>>(object, "moment_orders");
  if (object.contains("fuzz_cases")) cfg.fuzz_cases = get_field<int>(object, "fuzz_cases");
  if (object.contains("workers")) cfg.workers = get_field<unsigned>(object, "workers");
  if (object.contains("out")) cfg.out_dir = get_field<std::string>(object, "out");

  // d and k default against each other: either fixes the dimension.
  if (k_given && !d_given) cfg.d = static_cast<int>(cfg.k.size());
  if (d_given && !k_given && static_cast<int>(cfg.k.size()) != cfg.d)
    cfg.k.assign(static_cast<std::size_t>(cfg.d), 0);

  validate(cfg);
}

RunConfig parse_config(const std::string& text) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  RunConfig cfg;
  cfg.k.assign(static_cast<std::size_t>(cfg.d), 0);
  apply_overrides(cfg, parsed);
  return cfg;
}

}  // namespace ilt::cli
