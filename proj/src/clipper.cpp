#include "liqsim/clipper.hpp"

#include "liqsim/errors.hpp"

namespace liqsim {

void IncentiveParams::validate() const {
  if (chip.is_negative() || chip >= Ray::one()) throw Error(Errc::ConfigError, "chip must be in [0, 1)");
  if (tip.is_negative()) throw Error(Errc::ConfigError, "tip must be non-negative");
}

void AuctionParams::validate() const {
  if (buf < Ray::one()) throw Error(Errc::ConfigError, "buf must be >= 1");
  if (tail < 1) throw Error(Errc::ConfigError, "tail must be >= 1");
  if (cusp.raw() <= 0 || cusp >= Ray::one()) throw Error(Errc::ConfigError, "cusp must be in (0, 1)");
  if (step_factor.raw() <= 0 || step_factor >= Ray::one()) {
    throw Error(Errc::ConfigError, "step_factor must be in (0, 1)");
  }
  if (chop < Ray::one()) throw Error(Errc::ConfigError, "chop must be >= 1");
}

Rad incentive(const Rad& tab, const IncentiveParams& params) {
  return rmul(tab, params.chip) + params.tip;
}

Ray auction_price(const Ray& top, Timestep elapsed, const Ray& step_factor) {
  if (elapsed <= 0) return top;
  return rmul(top, rpow(step_factor, static_cast<std::uint64_t>(elapsed)));
}

bool needs_redo(const Auction& auction, Timestep now, const AuctionParams& params) {
  const Timestep elapsed = now - auction.tic;
  if (elapsed > params.tail) return true;
  const Ray price = auction_price(auction.top, elapsed, params.step_factor);
  return rdiv(price, auction.top) < params.cusp;
}

Clipper::Clipper(AuctionParams auction_params, IncentiveParams incentive_params)
    : auction_params_(std::move(auction_params)), incentive_params_(std::move(incentive_params)) {
  auction_params_.validate();
  incentive_params_.validate();
}

const Auction& Clipper::auction(AuctionId id) const {
  auto it = auctions_.find(id);
  if (it == auctions_.end()) throw Error(Errc::Closed, "auction " + std::to_string(id.value));
  return it->second;
}

BarkResult Clipper::bark(Ledger& ledger, VaultId vault_id, AgentId keeper, Timestep now) {
  const Vault& v = ledger.vault(vault_id);
  if (!ledger.is_unsafe(vault_id)) throw Error(Errc::NotUnsafe, "vault " + std::to_string(vault_id.value));
  // A vault that went bad since the last poke has no onset yet; it cannot be
  // liquidated before a later timestep either way.
  if (!v.unsafe_since || *v.unsafe_since >= now) {
    throw Error(Errc::SameTimestep, "vault " + std::to_string(vault_id.value));
  }

  BarkResult result;
  result.episode = Episode{vault_id, *v.unsafe_since, now};
  const AgentId usr = v.owner;

  auto [ink, art] = ledger.grab(vault_id, kClipperAccount);
  const Rad tab = rmul(art * ledger.ilk().rate, auction_params_.chop);

  if (!ink.is_zero() && !tab.is_zero()) {
    AuctionId id{next_id_++};
    auctions_.emplace(id, Auction{id, ink, tab, rmul(to_ray(ledger.ilk().feed_price), auction_params_.buf),
                                  now, usr, vault_id});
    result.auction = id;
  } else if (!ink.is_zero()) {
    ledger.move_gem(kClipperAccount, usr, ink);
  }

  result.incentive = incentive_for(tab);
  ledger.suck(keeper, result.incentive);
  return result;
}

Rad Clipper::redo(Ledger& ledger, AuctionId id, AgentId keeper, Timestep now) {
  auto it = auctions_.find(id);
  if (it == auctions_.end()) throw Error(Errc::Closed, "auction " + std::to_string(id.value));
  Auction& a = it->second;
  if (!stale(a, now)) throw Error(Errc::NotStale, "auction " + std::to_string(id.value));

  a.top = rmul(to_ray(ledger.ilk().feed_price), auction_params_.buf);
  a.tic = now;
  Rad paid = incentive_for(a.tab);
  ledger.suck(keeper, paid);
  return paid;
}

TakeResult Clipper::take(Ledger& ledger, AuctionId id, AgentId keeper, const Wad& max_qty, Timestep now,
                         const std::optional<Ray>& max_price) {
  auto it = auctions_.find(id);
  if (it == auctions_.end()) throw Error(Errc::Closed, "auction " + std::to_string(id.value));
  Auction& a = it->second;
  if (stale(a, now)) throw Error(Errc::NeedsRedo, "auction " + std::to_string(id.value));

  const Ray p = price(a, now);
  if (max_price && p > *max_price) throw Error(Errc::TooExpensive, "auction " + std::to_string(id.value));

  TakeResult result;
  if (max_qty.raw() <= 0) return result;

  Wad slice = min(a.lot, max_qty);
  if (slice * p > a.tab) slice = div_to_wad(a.tab, p);
  const Rad owe = slice * p;
  if (ledger.dai(keeper) < owe) throw Error(Errc::InsufficientDai, "auction " + std::to_string(id.value));

  ledger.move_dai(keeper, kVow, owe);
  ledger.heal(owe);
  ledger.move_gem(kClipperAccount, keeper, slice);
  a.lot -= slice;
  a.tab -= owe;

  // A remainder worth less than one wei of collateral can never be bought;
  // it is written off and stays behind as sin.
  const bool tab_settled = a.tab.raw() < p.raw();
  if (a.lot.is_zero() || tab_settled) {
    if (!a.lot.is_zero()) ledger.move_gem(kClipperAccount, a.usr, a.lot);
    auctions_.erase(it);
    result.closed = true;
  }
  result.slice = slice;
  result.owe = owe;
  return result;
}

}  // namespace liqsim
