#pragma once

// JSON run configs, sweep specs and reports. Field names in diagnostics
// match the document keys.
//
// Run config keys: schema_version, N, T, D, K, L, ell, tree ("chain",
// "star" or {"parents": [g | null, ...]}), dropouts, dropout_timing
// ("before_intra" | "after_intra"), adversaries, seed, prime_override,
// models, delay {inter, intra}, assert_loads.

#include <string>

#include <json.hpp>

#include "swiftagg/harness.hpp"

namespace swiftagg {

// Throws ConfigInvalid naming the offending key.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

// {"base": <run config>, "k_values": [...], "repetitions": n, "output": path}
SweepSpec parse_sweep_spec(const nlohmann::json& doc);
SweepSpec load_sweep_spec(const std::string& path);

nlohmann::json to_json(const RunReport& report);
nlohmann::json to_json(const RunConfig& config);

}  // namespace swiftagg
