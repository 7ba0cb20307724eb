#include "liqsim/engine.hpp"

#include "liqsim/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace liqsim {

void SimConfig::validate() const {
  incentives.validate();
  auction.validate();
  population.validate();
  gas.validate();
  if (mat.raw() <= 0) throw Error(Errc::ConfigError, "mat must be positive");
  if (dust.is_negative()) throw Error(Errc::ConfigError, "dust must be non-negative");
  if (population.n_spotter < 1) throw Error(Errc::ConfigError, "at least one spotter keeper is required");
}

Rad StatSeries::sum() const {
  Rad total;
  for (const auto& v : values_) total += v;
  return total;
}

StatListener builtin_stat(const std::string& name) {
  if (name == "n_unsafe") {
    return {{ActionKind::TimestepEnd}, [](const ActionRecord& r, const Ledger& ledger, StatSeries& s) {
              s.set(r.t, Rad::from_int(ledger.unsafe_count()));
            }};
  }
  if (name == "n_liquidations") {
    return {{ActionKind::Bark}, [](const ActionRecord& r, const Ledger&, StatSeries& s) {
              if (r.ok) s.add(r.t, Rad::one());
            }};
  }
  if (name == "incentives_paid") {
    return {{ActionKind::Bark, ActionKind::Redo}, [](const ActionRecord& r, const Ledger&, StatSeries& s) {
              if (r.ok) s.add(r.t, r.incentive);
            }};
  }
  throw Error(Errc::ConfigError, "unknown statistic '" + name + "'");
}

namespace {

ActionRecord make_record(Timestep t, AgentId actor, ActionKind kind) {
  ActionRecord r;
  r.t = t;
  r.actor = actor;
  r.kind = kind;
  return r;
}

}  // namespace

Simulation::Simulation(SimConfig config, const Timeframe& timeframe)
    : config_(std::move(config)),
      timeframe_(timeframe),
      ledger_(config_.mat, config_.dust),
      clipper_(config_.auction, config_.incentives),
      shuffle_rng_(make_stream(config_.seed, "engine/shuffle")) {
  config_.validate();
  if (timeframe_.ticks.empty()) throw Error(Errc::ValidationError, "empty timeframe");

  // Deployment: the spotter starts at the first observed price so vaults can
  // be opened in the first timestep regardless of action order.
  ledger_.poke(timeframe_.ticks.front().eth_price, 0);

  keepers_ = init_population(config_.population, config_.mat, config_.seed);
  const Rad sucked_before = ledger_.total_sucked();
  for (const auto& k : keepers_) {
    ledger_.slip(k.id, k.eth_balance);
    if (k.kind == KeeperKind::Clipper) ledger_.suck(k.id, k.dai_budget);
  }
  // Float for the AMM counterparty that absorbs clipper swaps.
  Wad float_dai;
  for (const auto& tick : timeframe_.ticks) float_dai = max(float_dai, tick.dai_reserve);
  ledger_.suck(kAmmAccount, to_rad(float_dai));
  exogenous_ = ledger_.total_sucked() - sucked_before;

  for (const auto& name : config_.stats) register_stat(name, builtin_stat(name));
}

void Simulation::register_stat(const std::string& name, StatListener listener) {
  for (const auto& l : listeners_) {
    if (l.name == name) throw Error(Errc::DuplicateStat, name);
  }
  stats_.emplace(name, StatSeries(timeframe_.size()));
  listeners_.push_back({name, std::move(listener)});
}

void Simulation::dispatch(const ActionRecord& record) {
  for (auto& l : listeners_) {
    const auto& trig = l.listener.triggers;
    if (std::find(trig.begin(), trig.end(), record.kind) == trig.end()) continue;
    l.listener.on_action(record, ledger_, stats_.at(l.name));
  }
  if (config_.check_invariants) {
    ++invariant_checks_;
    if (auto violation = ledger_.check_invariants()) {
      throw std::logic_error("ledger invariant violated at t=" + std::to_string(record.t) + " after " +
                             std::string(to_string(record.kind)) + ": " + *violation);
    }
  }
}

ActionRecord Simulation::execute(const Action& a, Timestep t) {
  ActionRecord record = make_record(t, a.actor, a.kind());
  const FeedTick& tick = timeframe_.ticks[static_cast<std::size_t>(t)];
  try {
    std::visit(
        [&](const auto& p) {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, action::OpenVault>) {
            auto it = keeper_vault_.find(a.actor);
            VaultId id = it != keeper_vault_.end() ? it->second : ledger_.open(a.actor);
            keeper_vault_[a.actor] = id;
            ledger_.frob(id, a.actor, p.ink, p.art);
          } else if constexpr (std::is_same_v<P, action::Poke>) {
            ledger_.poke(p.price, t);
          } else if constexpr (std::is_same_v<P, action::Bark>) {
            BarkResult r = clipper_.bark(ledger_, p.vault, a.actor, t);
            episodes_.push_back(r.episode);
            record.incentive = r.incentive;
            incentives_ += r.incentive;
            ++n_liquidations_;
          } else if constexpr (std::is_same_v<P, action::Redo>) {
            record.incentive = clipper_.redo(ledger_, p.auction, a.actor, t);
            incentives_ += record.incentive;
            ++n_redos_;
          } else if constexpr (std::is_same_v<P, action::Take>) {
            TakeResult r = clipper_.take(ledger_, p.auction, a.actor, p.max_qty, t, p.max_price);
            ++n_takes_;
            // Flip the collateral back to dai on the AMM when it has the float.
            const Rad proceeds = amm_out(r.slice, tick);
            if (!r.slice.is_zero() && ledger_.dai(kAmmAccount) >= proceeds) {
              ledger_.move_gem(a.actor, kAmmAccount, r.slice);
              ledger_.move_dai(kAmmAccount, a.actor, proceeds);
            }
          } else {
            throw std::logic_error("sentinel actions are engine-generated");
          }
        },
        a.payload);
  } catch (const Error& e) {
    record.ok = false;
    record.error = e.code();
  }
  auto k = static_cast<std::size_t>(record.kind);
  ++(record.ok ? executed_ : failed_)[k];
  return record;
}

void Simulation::step(Timestep t) {
  if (t != next_step_ || t >= static_cast<Timestep>(timeframe_.size())) {
    throw std::out_of_range("step " + std::to_string(t) + " out of order or beyond timeframe");
  }
  ++next_step_;

  ++sentinel_starts_;
  ++executed_[static_cast<std::size_t>(ActionKind::TimestepStart)];
  dispatch(make_record(t, kVow, ActionKind::TimestepStart));

  const FeedTick& tick = timeframe_.ticks[static_cast<std::size_t>(t)];
  Snapshot snap{ledger_, clipper_, tick, config_.gas, t};
  std::vector<Action> actions;
  for (auto& k : keepers_) {
    auto emitted = keeper_actions(k, snap);
    actions.insert(actions.end(), std::make_move_iterator(emitted.begin()), std::make_move_iterator(emitted.end()));
  }
  std::shuffle(actions.begin(), actions.end(), shuffle_rng_);

  for (const auto& a : actions) dispatch(execute(a, t));
  last_order_ = std::move(actions);

  ++sentinel_ends_;
  ++executed_[static_cast<std::size_t>(ActionKind::TimestepEnd)];
  dispatch(make_record(t, kVow, ActionKind::TimestepEnd));
}

RunSummary Simulation::run() {
  for (Timestep t = next_step_; t < static_cast<Timestep>(timeframe_.size()); ++t) step(t);
  return summary();
}

RunSummary Simulation::summary() const {
  RunSummary s;
  s.timeframe = timeframe_.name;
  s.seed = config_.seed;
  s.chip = config_.incentives.chip;
  s.tip = config_.incentives.tip;
  s.n_timesteps = timeframe_.size();
  for (const auto& [name, series] : stats_) s.series.emplace(name, series.values());
  s.episodes = episodes_;
  s.avg_response_time = avg_response_time(episodes_);
  s.total_incentives = incentives_;
  s.n_liquidations = n_liquidations_;
  s.n_redos = n_redos_;
  s.n_takes = n_takes_;
  s.exogenous_dai = exogenous_;
  s.sentinel_starts = sentinel_starts_;
  s.sentinel_ends = sentinel_ends_;
  s.executed = executed_;
  s.failed = failed_;
  s.invariant_checks = invariant_checks_;
  return s;
}

RunSummary run(const SimConfig& config, const Timeframe& timeframe) {
  Simulation sim(config, timeframe);
  return sim.run();
}

RunSummary run(const SimConfig& config) {
  Timeframe tf = load_timeframe(config.timeframe_path, config.ticks_per_timeframe);
  return run(config, tf);
}

}  // namespace liqsim
