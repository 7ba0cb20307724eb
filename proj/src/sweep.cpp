#include "liqsim/sweep.hpp"

#include "liqsim/errors.hpp"
#include "liqsim/rng.hpp"

#include <omp.h>

#include <algorithm>

namespace liqsim {

void SweepConfig::validate() const {
  if (chips.empty() || tips.empty()) throw Error(Errc::ConfigError, "chip and tip grids must be non-empty");
  if (runs < 1) throw Error(Errc::ConfigError, "runs must be >= 1");
  for (double c : chips) {
    IncentiveParams{Ray::from_double(c), Rad{}}.validate();
  }
  for (double t : tips) {
    IncentiveParams{Ray{}, Rad::from_double(t)}.validate();
  }
}

std::uint64_t run_seed(std::uint64_t base_seed, const std::string& timeframe, int run_index) {
  return derive_seed(derive_seed(base_seed, timeframe), static_cast<std::uint64_t>(run_index));
}

namespace {

struct Job {
  std::size_t cell = 0;
  const Timeframe* timeframe = nullptr;
  double chip = 0;
  double tip = 0;
  int run = 0;
};

struct JobOutput {
  RunResult result;
  std::optional<RunSummary> summary;
  std::optional<std::string> error;
};

std::vector<const Timeframe*> select_timeframes(const SweepConfig& config, const std::vector<Timeframe>& all) {
  std::vector<const Timeframe*> out;
  if (config.timeframes.empty()) {
    for (const auto& tf : all) out.push_back(&tf);
    return out;
  }
  for (const auto& name : config.timeframes) {
    auto it = std::find_if(all.begin(), all.end(), [&](const Timeframe& tf) { return tf.name == name; });
    if (it == all.end()) throw Error(Errc::ConfigError, "timeframe '" + name + "' not supplied");
    out.push_back(&*it);
  }
  return out;
}

// Cells in (timeframe, chip, tip) order, jobs in (cell, run) order.
std::pair<std::vector<CellResult>, std::vector<Job>> plan(const SweepConfig& config,
                                                          const std::vector<Timeframe>& all) {
  config.validate();
  std::vector<CellResult> cells;
  std::vector<Job> jobs;
  for (const Timeframe* tf : select_timeframes(config, all)) {
    for (double chip : config.chips) {
      for (double tip : config.tips) {
        CellResult cell;
        cell.timeframe = tf->name;
        cell.chip = chip;
        cell.tip = tip;
        cell.runs.resize(static_cast<std::size_t>(config.runs));
        for (int r = 0; r < config.runs; ++r) jobs.push_back(Job{cells.size(), tf, chip, tip, r});
        cells.push_back(std::move(cell));
      }
    }
  }
  return {std::move(cells), std::move(jobs)};
}

JobOutput execute(const SweepConfig& config, const Job& job) {
  JobOutput out;
  out.result.run = job.run;
  out.result.seed = run_seed(config.base_seed, job.timeframe->name, job.run);
  try {
    SimConfig c = config.base;
    c.incentives = IncentiveParams{Ray::from_double(job.chip), Rad::from_double(job.tip)};
    c.seed = out.result.seed;
    RunSummary s = run(c, *job.timeframe);
    out.result.avg_response_time = s.avg_response_time;
    out.result.total_incentives = s.total_incentives.to_double();
    out.result.n_liquidations = s.n_liquidations;
    if (job.run == 0) out.summary = std::move(s);
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

void collect(std::vector<CellResult>& cells, const std::vector<Job>& jobs, std::vector<JobOutput>& outputs) {
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    CellResult& cell = cells[jobs[i].cell];
    JobOutput& out = outputs[i];
    if (out.error && !cell.error) cell.error = "run " + std::to_string(jobs[i].run) + ": " + *out.error;
    cell.runs[static_cast<std::size_t>(jobs[i].run)] = out.result;
    if (out.summary) cell.sample = std::move(out.summary);
  }
  aggregate(cells);
}

}  // namespace

void aggregate(std::vector<CellResult>& cells) {
  for (auto& cell : cells) {
    cell.mean_response_time.reset();
    cell.mean_incentives = 0;
    cell.baseline = false;
    cell.cost_effectiveness.reset();
    if (cell.error || cell.runs.empty()) continue;
    double rt_sum = 0;
    int rt_n = 0;
    double inc_sum = 0;
    for (const auto& r : cell.runs) {
      if (r.avg_response_time) {
        rt_sum += *r.avg_response_time;
        ++rt_n;
      }
      inc_sum += r.total_incentives;
    }
    if (rt_n > 0) cell.mean_response_time = rt_sum / rt_n;
    cell.mean_incentives = inc_sum / static_cast<double>(cell.runs.size());
  }

  std::vector<std::string> seen;
  for (const auto& cell : cells) {
    if (std::find(seen.begin(), seen.end(), cell.timeframe) == seen.end()) seen.push_back(cell.timeframe);
  }
  for (const auto& tf : seen) {
    CellResult* base = nullptr;
    for (auto& cell : cells) {
      if (cell.timeframe != tf) continue;
      if (!base || cell.chip < base->chip || (cell.chip == base->chip && cell.tip < base->tip)) base = &cell;
    }
    base->baseline = true;
    if (base->error || !base->mean_response_time) continue;
    const MetricPoint b{*base->mean_response_time, base->mean_incentives};
    for (auto& cell : cells) {
      if (cell.timeframe != tf || &cell == base || cell.error || !cell.mean_response_time) continue;
      try {
        cell.cost_effectiveness = cost_effectiveness(b, {*cell.mean_response_time, cell.mean_incentives});
      } catch (const Error&) {
        // Equal incentives: no defined value.
      }
    }
  }
}

std::vector<CellResult> run_sweep_serial(const SweepConfig& config, const std::vector<Timeframe>& timeframes) {
  auto [cells, jobs] = plan(config, timeframes);
  std::vector<JobOutput> outputs(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) outputs[i] = execute(config, jobs[i]);
  collect(cells, jobs, outputs);
  return cells;
}

std::vector<CellResult> run_sweep(const SweepConfig& config, const std::vector<Timeframe>& timeframes, int jobs) {
  auto [cells, plan_jobs] = plan(config, timeframes);
  std::vector<JobOutput> outputs(plan_jobs.size());
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
  const auto n = static_cast<std::int64_t>(plan_jobs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    outputs[static_cast<std::size_t>(i)] = execute(config, plan_jobs[static_cast<std::size_t>(i)]);
  }
  collect(cells, plan_jobs, outputs);
  return cells;
}

}  // namespace liqsim
