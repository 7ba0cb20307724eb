// The timestep loop. Each timestep fires a start sentinel, collects every
// keeper's actions from the same snapshot, executes them in a shuffled order
// and fires an end sentinel. Statistic listeners observe every executed
// action, sentinels included.
#pragma once

#include "liqsim/action.hpp"
#include "liqsim/clipper.hpp"
#include "liqsim/errors.hpp"
#include "liqsim/keepers.hpp"
#include "liqsim/ledger.hpp"
#include "liqsim/market.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace liqsim {

inline const std::vector<std::string> kDefaultStats = {"n_unsafe", "n_liquidations", "incentives_paid"};

struct SimConfig {
  std::filesystem::path timeframe_path;
  std::optional<std::size_t> ticks_per_timeframe = kTicksPerDay;
  IncentiveParams incentives{Ray::from_decimal("0.001"), Rad::from_int(100)};
  AuctionParams auction;
  KeeperPopulationConfig population;
  GasModel gas;
  Ray mat = Ray::from_decimal("1.5");
  Rad dust;
  std::uint64_t seed = 0;
  std::vector<std::string> stats = kDefaultStats;
  /// Assert ledger identities after every executed action.
  bool check_invariants = false;

  void validate() const;
};

/// Outcome of one executed action as seen by listeners.
struct ActionRecord {
  Timestep t = 0;
  AgentId actor;
  ActionKind kind = ActionKind::TimestepStart;
  bool ok = true;
  std::optional<Errc> error;
  Rad incentive;  // paid by a successful Bark or Redo
};

/// Per-timestep values at ledger precision; counts are whole units.
class StatSeries {
 public:
  explicit StatSeries(std::size_t n = 0) : values_(n) {}

  void add(Timestep t, const Rad& v) { values_.at(static_cast<std::size_t>(t)) += v; }
  void set(Timestep t, const Rad& v) { values_.at(static_cast<std::size_t>(t)) = v; }
  const std::vector<Rad>& values() const { return values_; }
  Rad sum() const;

 private:
  std::vector<Rad> values_;
};

struct StatListener {
  std::vector<ActionKind> triggers;
  std::function<void(const ActionRecord&, const Ledger&, StatSeries&)> on_action;
};

/// Built-in listeners: n_unsafe, n_liquidations, incentives_paid.
/// Throws ConfigError for any other name.
StatListener builtin_stat(const std::string& name);

struct RunSummary {
  std::string timeframe;
  std::uint64_t seed = 0;
  Ray chip;
  Rad tip;
  std::size_t n_timesteps = 0;
  std::map<std::string, std::vector<Rad>> series;
  std::vector<Episode> episodes;
  std::optional<double> avg_response_time;
  Rad total_incentives;
  std::int64_t n_liquidations = 0;
  std::int64_t n_redos = 0;
  std::int64_t n_takes = 0;
  Rad exogenous_dai;  // clipper budgets and AMM float minted at setup
  std::int64_t sentinel_starts = 0;
  std::int64_t sentinel_ends = 0;
  std::array<std::int64_t, kActionKinds> executed{};
  std::array<std::int64_t, kActionKinds> failed{};
  std::int64_t invariant_checks = 0;
};

class Simulation {
 public:
  /// The timeframe must outlive the simulation.
  Simulation(SimConfig config, const Timeframe& timeframe);

  void register_stat(const std::string& name, StatListener listener);

  /// Executes timestep t. Timesteps must be stepped in order from 0.
  void step(Timestep t);

  /// Steps through the whole timeframe and returns the summary.
  RunSummary run();

  RunSummary summary() const;

  const Ledger& ledger() const { return ledger_; }
  const Clipper& clipper() const { return clipper_; }
  const std::vector<Keeper>& keepers() const { return keepers_; }
  const SimConfig& config() const { return config_; }
  const std::vector<Action>& last_execution_order() const { return last_order_; }
  const std::map<std::string, StatSeries>& stats() const { return stats_; }

 private:
  struct NamedListener {
    std::string name;
    StatListener listener;
  };

  ActionRecord execute(const Action& a, Timestep t);
  void dispatch(const ActionRecord& record);

  SimConfig config_;
  const Timeframe& timeframe_;
  Ledger ledger_;
  Clipper clipper_;
  std::vector<Keeper> keepers_;
  std::map<AgentId, VaultId> keeper_vault_;
  Rng shuffle_rng_;
  std::vector<NamedListener> listeners_;
  std::map<std::string, StatSeries> stats_;
  std::vector<Action> last_order_;

  std::vector<Episode> episodes_;
  Rad incentives_;
  Rad exogenous_;
  std::int64_t n_liquidations_ = 0;
  std::int64_t n_redos_ = 0;
  std::int64_t n_takes_ = 0;
  std::int64_t sentinel_starts_ = 0;
  std::int64_t sentinel_ends_ = 0;
  std::array<std::int64_t, kActionKinds> executed_{};
  std::array<std::int64_t, kActionKinds> failed_{};
  std::int64_t invariant_checks_ = 0;
  Timestep next_step_ = 0;
};

RunSummary run(const SimConfig& config, const Timeframe& timeframe);
/// Loads config.timeframe_path and runs it.
RunSummary run(const SimConfig& config);

}  // namespace liqsim
