// Dutch collateral auctions: bark, redo, take, the price curve and the
// chip/tip keeper incentive.
#pragma once

#include "liqsim/fixed_point.hpp"
#include "liqsim/ledger.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>

namespace liqsim {

struct IncentiveParams {
  Ray chip;  // fraction of tab
  Rad tip;   // flat amount

  /// Throws ConfigError unless chip is in [0, 1) and tip >= 0.
  void validate() const;
};

struct AuctionParams {
  Ray buf = Ray::from_decimal("1.25");
  Timestep tail = 14;
  Ray cusp = Ray::from_decimal("0.45");
  Ray step_factor = Ray::from_decimal("0.945");
  Ray chop = Ray::one();

  void validate() const;
};

struct AuctionId {
  std::uint32_t value = 0;
  friend auto operator<=>(const AuctionId&, const AuctionId&) = default;
};

struct Auction {
  AuctionId id;
  Wad lot;
  Rad tab;
  Ray top;
  Timestep tic = 0;
  AgentId usr;
  VaultId vault;
};

/// One unsafe-to-liquidated interval of a vault.
struct Episode {
  VaultId vault;
  Timestep onset = 0;
  Timestep liquidated = 0;

  Timestep length() const { return liquidated - onset; }
};

struct BarkResult {
  std::optional<AuctionId> auction;  // empty when the vault held no collateral
  Rad incentive;
  Episode episode;
};

struct TakeResult {
  Wad slice;
  Rad owe;
  bool closed = false;
};

/// chip * tab + tip.
Rad incentive(const Rad& tab, const IncentiveParams& params);

/// top * step_factor^elapsed.
Ray auction_price(const Ray& top, Timestep elapsed, const Ray& step_factor);

/// True once the auction is older than tail or its price has fallen below
/// cusp * top.
bool needs_redo(const Auction& auction, Timestep now, const AuctionParams& params);

class Clipper {
 public:
  Clipper(AuctionParams auction_params, IncentiveParams incentive_params);

  const AuctionParams& auction_params() const { return auction_params_; }
  const IncentiveParams& incentive_params() const { return incentive_params_; }

  /// Liquidates an unsafe vault, starts an auction and pays the keeper.
  /// Throws UnknownVault, NotUnsafe or SameTimestep.
  BarkResult bark(Ledger& ledger, VaultId vault, AgentId keeper, Timestep now);

  /// Restarts a stale auction at the current feed price and pays the keeper.
  /// Returns the incentive paid. Throws Closed or NotStale.
  Rad redo(Ledger& ledger, AuctionId id, AgentId keeper, Timestep now);

  /// Buys up to max_qty collateral at the current auction price. The keeper
  /// pays owe = slice * price, exactly. Throws Closed, NeedsRedo,
  /// TooExpensive or InsufficientDai.
  TakeResult take(Ledger& ledger, AuctionId id, AgentId keeper, const Wad& max_qty, Timestep now,
                  const std::optional<Ray>& max_price = std::nullopt);

  const std::map<AuctionId, Auction>& auctions() const { return auctions_; }
  const Auction& auction(AuctionId id) const;

  Ray price(const Auction& a, Timestep now) const {
    return auction_price(a.top, now - a.tic, auction_params_.step_factor);
  }
  bool stale(const Auction& a, Timestep now) const { return needs_redo(a, now, auction_params_); }
  Rad incentive_for(const Rad& tab) const { return incentive(tab, incentive_params_); }

 private:
  AuctionParams auction_params_;
  IncentiveParams incentive_params_;
  std::map<AuctionId, Auction> auctions_;
  std::uint32_t next_id_ = 0;
};

}  // namespace liqsim
