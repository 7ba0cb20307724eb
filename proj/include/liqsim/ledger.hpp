// Vault accounting for a single collateral type: the Core/Collateral/Dai
// bookkeeping, the price spotter and a minimal Vow (unbacked-debt sink).
#pragma once

#include "liqsim/fixed_point.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace liqsim {

using Timestep = std::int64_t;

struct AgentId {
  std::uint32_t value = 0;
  friend auto operator<=>(const AgentId&, const AgentId&) = default;
};

struct VaultId {
  std::uint32_t value = 0;
  friend auto operator<=>(const VaultId&, const VaultId&) = default;
};

// Protocol-owned accounts. Keeper ids are allocated from zero upwards.
inline constexpr AgentId kVow{0xFFFFFF00u};
inline constexpr AgentId kClipperAccount{0xFFFFFF01u};
inline constexpr AgentId kAmmAccount{0xFFFFFF02u};

struct Ilk {
  Ray spot;        // feed / mat
  Ray mat;         // liquidation ratio
  Ray rate;        // debt multiplier, fixed at 1.0
  Rad dust;        // minimum non-zero vault debt
  Wad total_art;   // sum of vault art
  Wad feed_price;  // last poked oracle value
};

struct Vault {
  AgentId owner;
  Wad ink;  // locked collateral
  Wad art;  // normalised debt
  std::optional<Timestep> unsafe_since;
};

struct PokeResult {
  Ray spot;
  int newly_unsafe = 0;
  int recovered = 0;
};

class Ledger {
 public:
  explicit Ledger(Ray mat, Rad dust = Rad{});

  const Ilk& ilk() const { return ilk_; }
  const std::map<VaultId, Vault>& vaults() const { return vaults_; }
  const Vault& vault(VaultId id) const;

  /// Creates an empty vault owned by `owner`.
  VaultId open(AgentId owner);

  /// Credits free collateral to an account (a deposit from outside the
  /// system, e.g. a keeper's starting ETH).
  void slip(AgentId who, const Wad& amount);

  /// Adjusts a vault by signed collateral and debt deltas. Throws NotOwner,
  /// InsufficientGem, InsufficientBalance, NotSafe or Dust.
  const Vault& frob(VaultId id, AgentId caller, const Wad& dink, const Wad& dart);

  /// Sets spot = feed / mat and re-evaluates every vault at timestep `now`.
  PokeResult poke(const Wad& feed_price, Timestep now);

  /// ink * spot < art * rate.
  bool is_unsafe(VaultId id) const;

  /// Confiscates the vault: collateral goes to `sink`'s gem balance and the
  /// debt becomes Vow sin. Returns (seized ink, seized art).
  std::pair<Wad, Wad> grab(VaultId id, AgentId sink);

  /// Mints unbacked dai to `recipient` against Vow sin.
  void suck(AgentId recipient, const Rad& amount);

  /// Cancels Vow-held dai against sin.
  void heal(const Rad& amount);

  void move_dai(AgentId from, AgentId to, const Rad& amount);
  void move_gem(AgentId from, AgentId to, const Wad& amount);

  Rad dai(AgentId who) const;
  Wad gem(AgentId who) const;
  const std::map<AgentId, Rad>& dai_balances() const { return dai_; }
  const std::map<AgentId, Wad>& gem_balances() const { return gem_; }

  const Rad& sin() const { return sin_; }
  const Rad& vice() const { return vice_; }
  const Rad& debt() const { return debt_; }
  /// Cumulative amount ever minted through suck.
  const Rad& total_sucked() const { return total_sucked_; }
  /// Sum of every free and locked collateral balance.
  Wad total_collateral() const;

  int unsafe_count() const;

  /// Empty when every accounting identity holds; otherwise a description of
  /// the first violated one.
  std::optional<std::string> check_invariants() const;

 private:
  Vault& mutable_vault(VaultId id);
  bool unsafe(const Vault& v) const;

  Ilk ilk_;
  std::map<VaultId, Vault> vaults_;
  std::map<AgentId, Wad> gem_;
  std::map<AgentId, Rad> dai_;
  Rad sin_;
  Rad vice_;
  Rad debt_;
  Rad total_sucked_;
  std::uint32_t next_vault_ = 0;
  Timestep now_ = 0;
};

}  // namespace liqsim
