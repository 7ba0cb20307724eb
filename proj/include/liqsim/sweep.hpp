// Grid sweep over (timeframe x chip x tip x run).
//
// run_sweep_serial is the reference implementation; run_sweep distributes the
// same jobs over OpenMP threads and must produce an identical table.
#pragma once

#include "liqsim/engine.hpp"
#include "liqsim/metrics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace liqsim {

struct SweepConfig {
  std::vector<double> chips{0.001, 0.01, 0.1};
  std::vector<double> tips{100, 500, 1000};
  int runs = 10;
  std::uint64_t base_seed = 0;
  /// Timeframe names (file stems) to include; empty means all supplied.
  std::vector<std::string> timeframes;
  /// Everything except chip, tip, seed and timeframe.
  SimConfig base;

  void validate() const;
};

/// Seed of one run. Depends on (base seed, timeframe, run index) only, so
/// every cell of a timeframe replays the same keeper population and random
/// streams and cells differ only by chip and tip.
std::uint64_t run_seed(std::uint64_t base_seed, const std::string& timeframe, int run_index);

struct RunResult {
  int run = 0;
  std::uint64_t seed = 0;
  std::optional<double> avg_response_time;
  double total_incentives = 0;
  std::int64_t n_liquidations = 0;
};

struct CellResult {
  std::string timeframe;
  double chip = 0;
  double tip = 0;
  std::vector<RunResult> runs;
  std::optional<double> mean_response_time;  // over runs with any liquidation
  double mean_incentives = 0;
  bool baseline = false;
  std::optional<double> cost_effectiveness;  // vs the timeframe's baseline
  std::optional<std::string> error;
  /// Full summary of run 0, kept for charts.
  std::optional<RunSummary> sample;
};

/// Fills cell means, baseline flags and cost-effectiveness from the per-run
/// rows. Baseline is the (min chip, min tip) cell of each timeframe.
void aggregate(std::vector<CellResult>& cells);

std::vector<CellResult> run_sweep_serial(const SweepConfig& config, const std::vector<Timeframe>& timeframes);

/// jobs <= 0 uses the OpenMP default thread count.
std::vector<CellResult> run_sweep(const SweepConfig& config, const std::vector<Timeframe>& timeframes, int jobs = 0);

}  // namespace liqsim
