// JSON run and sweep configuration.
//
// {
//   "seed": 7,
//   "timeframe": "data/synthetic/crash_day.csv",
//   "ticks_per_timeframe": 144,             // null accepts any length
//   "incentives": {"chip": 0.001, "tip": 100},
//   "auction": {"buf": 1.25, "tail": 14, "cusp": 0.45, "step_factor": 0.945, "chop": 1},
//   "ilk": {"mat": 1.5, "dust": 0},
//   "gas": {"mean_units": 300000, "sd_units": 30000, "floor_units": 21000},
//   "population": {"n_vault": 50, ..., "eth_balance": {"mean": 10, "sd": 2, "min": 1}},
//   "stats": ["n_unsafe", "n_liquidations", "incentives_paid"],
//   "check_invariants": false,
//   "sweep": {"chips": [...], "tips": [...], "runs": 10, "base_seed": 0, "timeframes": [...]}
// }
//
// Every block is optional. Decimal parameters accept JSON numbers or decimal
// strings; numbers are read through their shortest round-trip form.
#pragma once

#include "liqsim/engine.hpp"

#include <json.hpp>

#include <filesystem>

namespace liqsim {

struct SweepConfig;

/// Reads and parses a JSON file. Throws IoError or ParseError.
nlohmann::json load_json(const std::filesystem::path& path);

/// Relative timeframe paths are resolved against `base_dir`.
/// Throws ConfigError on unknown keys or invalid values.
SimConfig sim_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

/// Reads the "sweep" block plus the simulation blocks it shares.
SweepConfig sweep_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

nlohmann::json to_json(const SimConfig& config);

}  // namespace liqsim
