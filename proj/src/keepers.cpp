#include "liqsim/keepers.hpp"

#include "liqsim/errors.hpp"

#include <algorithm>

namespace liqsim {

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::TimestepStart: return "TimestepStart";
    case ActionKind::TimestepEnd: return "TimestepEnd";
    case ActionKind::OpenVault: return "OpenVault";
    case ActionKind::Poke: return "Poke";
    case ActionKind::Bark: return "Bark";
    case ActionKind::Redo: return "Redo";
    case ActionKind::Take: return "Take";
  }
  return "Unknown";
}

std::string_view to_string(KeeperKind kind) {
  switch (kind) {
    case KeeperKind::Vault: return "vault";
    case KeeperKind::Spotter: return "spotter";
    case KeeperKind::Bark: return "bark";
    case KeeperKind::Redo: return "redo";
    case KeeperKind::Clipper: return "clipper";
  }
  return "unknown";
}

void KeeperPopulationConfig::validate() const {
  for (int n : {n_vault, n_spotter, n_bark, n_redo, n_clipper}) {
    if (n < 0) throw Error(Errc::ConfigError, "keeper counts must be non-negative");
  }
  for (const Distribution* d : {&eth_balance, &target_cr, &desired_discount, &dai_budget}) {
    if (d->sd < 0) throw Error(Errc::ConfigError, "distribution sd must be non-negative");
  }
  if (eth_balance_min < 0) throw Error(Errc::ConfigError, "eth_balance_min must be non-negative");
  if (target_cr_margin <= 0) throw Error(Errc::ConfigError, "target_cr_margin must be positive");
  if (!(discount_min > 0 && discount_min <= discount_max && discount_max < 1)) {
    throw Error(Errc::ConfigError, "discount bounds must satisfy 0 < min <= max < 1");
  }
}

std::vector<Keeper> init_population(const KeeperPopulationConfig& config, const Ray& mat, std::uint64_t seed) {
  config.validate();
  const double cr_floor = mat.to_double() + config.target_cr_margin;

  std::vector<Keeper> keepers;
  keepers.reserve(static_cast<std::size_t>(config.total()));
  auto add_group = [&](KeeperKind kind, int count) {
    for (int i = 0; i < count; ++i) {
      Keeper k;
      k.id = AgentId{static_cast<std::uint32_t>(keepers.size())};
      k.kind = kind;
      k.rng = make_stream(seed, std::string("keeper/") + std::string(to_string(kind)), static_cast<std::uint64_t>(i));
      const auto& eb = config.eth_balance;
      k.eth_balance = Wad::from_double(truncated_normal(k.rng, eb.mean, eb.sd, config.eth_balance_min, 1e9));
      const auto& cr = config.target_cr;
      k.target_cr = Ray::from_double(truncated_normal(k.rng, cr.mean, cr.sd, cr_floor, 1e9));
      if (kind == KeeperKind::Clipper) {
        const auto& dd = config.desired_discount;
        k.desired_discount =
            Ray::from_double(truncated_normal(k.rng, dd.mean, dd.sd, config.discount_min, config.discount_max));
        const auto& db = config.dai_budget;
        k.dai_budget = to_rad(Wad::from_double(truncated_normal(k.rng, db.mean, db.sd, 0.0, 1e15)));
      }
      keepers.push_back(std::move(k));
    }
  };
  add_group(KeeperKind::Vault, config.n_vault);
  add_group(KeeperKind::Spotter, config.n_spotter);
  add_group(KeeperKind::Bark, config.n_bark);
  add_group(KeeperKind::Redo, config.n_redo);
  add_group(KeeperKind::Clipper, config.n_clipper);
  return keepers;
}

Wad target_art(const Wad& ink, const Wad& price, const Ray& target_cr) {
  return div_to_wad(ink * to_ray(price), target_cr);
}

std::vector<Action> vault_keeper_actions(const Keeper& keeper, const Snapshot& snap) {
  if (snap.t != 0 || keeper.eth_balance.raw() <= 0) return {};
  const Wad art = target_art(keeper.eth_balance, snap.tick.eth_price, keeper.target_cr);
  const Ilk& ilk = snap.ledger.ilk();
  if (art * ilk.rate < ilk.dust) return {};
  return {Action{keeper.id, action::OpenVault{keeper.eth_balance, art}}};
}

std::vector<Action> spotter_actions(const Keeper& keeper, const Snapshot& snap) {
  return {Action{keeper.id, action::Poke{snap.tick.eth_price}}};
}

namespace {

Rad sampled_gas_cost(Keeper& keeper, const Snapshot& snap) {
  return gas_cost_dai(sample_gas_units(snap.gas, keeper.rng), snap.tick.gas_price, snap.tick.eth_price);
}

}  // namespace

std::vector<Action> bark_keeper_actions(Keeper& keeper, const Snapshot& snap) {
  std::vector<Action> out;
  const Ilk& ilk = snap.ledger.ilk();
  const Ray& chop = snap.clipper.auction_params().chop;
  for (const auto& [id, v] : snap.ledger.vaults()) {
    if (!v.unsafe_since || *v.unsafe_since >= snap.t) continue;
    if (!snap.ledger.is_unsafe(id)) continue;
    const Rad tab = rmul(v.art * ilk.rate, chop);
    if (snap.clipper.incentive_for(tab) > sampled_gas_cost(keeper, snap)) {
      out.push_back(Action{keeper.id, action::Bark{id}});
    }
  }
  return out;
}

std::vector<Action> redo_keeper_actions(Keeper& keeper, const Snapshot& snap) {
  std::vector<Action> out;
  for (const auto& [id, a] : snap.clipper.auctions()) {
    if (!snap.clipper.stale(a, snap.t)) continue;
    if (snap.clipper.incentive_for(a.tab) > sampled_gas_cost(keeper, snap)) {
      out.push_back(Action{keeper.id, action::Redo{id}});
    }
  }
  return out;
}

std::vector<Action> clipper_keeper_actions(Keeper& keeper, const Snapshot& snap) {
  std::vector<Action> out;
  Rad budget = snap.ledger.dai(keeper.id);
  const Ray threshold = rmul(to_ray(snap.tick.eth_price), keeper.desired_discount);
  for (const auto& [id, a] : snap.clipper.auctions()) {
    if (snap.clipper.stale(a, snap.t)) continue;
    const Ray price = snap.clipper.price(a, snap.t);
    const Rad cost = a.lot * price;
    if (budget < cost) continue;
    if (price > threshold) continue;
    const Rad profit = amm_out(a.lot, snap.tick) - cost - sampled_gas_cost(keeper, snap);
    if (profit.raw() <= 0) continue;
    out.push_back(Action{keeper.id, action::Take{id, a.lot, price}});
    budget -= cost;
  }
  return out;
}

std::vector<Action> keeper_actions(Keeper& keeper, const Snapshot& snap) {
  std::vector<Action> out = vault_keeper_actions(keeper, snap);
  std::vector<Action> role;
  switch (keeper.kind) {
    case KeeperKind::Vault: break;
    case KeeperKind::Spotter: role = spotter_actions(keeper, snap); break;
    case KeeperKind::Bark: role = bark_keeper_actions(keeper, snap); break;
    case KeeperKind::Redo: role = redo_keeper_actions(keeper, snap); break;
    case KeeperKind::Clipper: role = clipper_keeper_actions(keeper, snap); break;
  }
  out.insert(out.end(), std::make_move_iterator(role.begin()), std::make_move_iterator(role.end()));
  return out;
}

}  // namespace liqsim
