// Keeper agents. Each archetype reads a start-of-timestep snapshot and emits
// actions; only the engine mutates protocol state.
#pragma once

#include "liqsim/action.hpp"
#include "liqsim/clipper.hpp"
#include "liqsim/ledger.hpp"
#include "liqsim/market.hpp"
#include "liqsim/rng.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace liqsim {

enum class KeeperKind { Vault, Spotter, Bark, Redo, Clipper };

std::string_view to_string(KeeperKind kind);

struct Distribution {
  double mean = 0;
  double sd = 0;
};

struct KeeperPopulationConfig {
  int n_vault = 50;
  int n_spotter = 1;
  int n_bark = 5;
  int n_redo = 5;
  int n_clipper = 5;

  Distribution eth_balance{10.0, 2.0};
  double eth_balance_min = 1.0;
  Distribution target_cr{1.75, 0.15};
  double target_cr_margin = 0.05;  // floor is mat + margin
  Distribution desired_discount{0.85, 0.05};
  double discount_min = 0.5;
  double discount_max = 0.99;
  Distribution dai_budget{50000.0, 10000.0};

  int total() const { return n_vault + n_spotter + n_bark + n_redo + n_clipper; }
  void validate() const;
};

struct Keeper {
  AgentId id;
  KeeperKind kind = KeeperKind::Vault;
  Wad eth_balance;
  Ray target_cr;
  Ray desired_discount;  // clipper only
  Rad dai_budget;        // clipper only
  Rng rng;               // private stream for gas estimates
};

/// Read-only view of the world at the start of a timestep.
struct Snapshot {
  const Ledger& ledger;
  const Clipper& clipper;
  const FeedTick& tick;
  const GasModel& gas;
  Timestep t;
};

/// Builds the population in kind order (vault, spotter, bark, redo,
/// clipper). Every keeper draws from a stream keyed by (kind, index within
/// kind), so resizing one group leaves the others' draws unchanged.
std::vector<Keeper> init_population(const KeeperPopulationConfig& config, const Ray& mat, std::uint64_t seed);

/// Vault opened at t = 0 with the whole ETH balance, drawn to target_cr.
std::vector<Action> vault_keeper_actions(const Keeper& keeper, const Snapshot& snap);
std::vector<Action> spotter_actions(const Keeper& keeper, const Snapshot& snap);
std::vector<Action> bark_keeper_actions(Keeper& keeper, const Snapshot& snap);
std::vector<Action> redo_keeper_actions(Keeper& keeper, const Snapshot& snap);
std::vector<Action> clipper_keeper_actions(Keeper& keeper, const Snapshot& snap);

/// Everything a keeper does this timestep: the inherited vault behaviour
/// followed by its role-specific actions.
std::vector<Action> keeper_actions(Keeper& keeper, const Snapshot& snap);

/// Debt drawn by a vault keeper: ink * price / target_cr.
Wad target_art(const Wad& ink, const Wad& price, const Ray& target_cr);

}  // namespace liqsim
