#include "liqsim/ledger.hpp"

#include "liqsim/errors.hpp"

namespace liqsim {

namespace {

template <int D>
void credit(std::map<AgentId, Fixed<D>>& book, AgentId who, const Fixed<D>& amount) {
  book[who] += amount;
}

template <int D>
void debit(std::map<AgentId, Fixed<D>>& book, AgentId who, const Fixed<D>& amount, Errc code) {
  auto it = book.find(who);
  if (it == book.end() || it->second < amount) {
    throw Error(code, "balance of agent " + std::to_string(who.value) + " below " +
                          amount.to_string());
  }
  it->second -= amount;
}

}  // namespace

Ledger::Ledger(Ray mat, Rad dust) {
  if (mat.raw() <= 0) throw Error(Errc::ConfigError, "mat must be positive");
  if (dust.is_negative()) throw Error(Errc::ConfigError, "dust must be non-negative");
  ilk_.mat = std::move(mat);
  ilk_.rate = Ray::one();
  ilk_.dust = std::move(dust);
}

const Vault& Ledger::vault(VaultId id) const {
  auto it = vaults_.find(id);
  if (it == vaults_.end()) throw Error(Errc::UnknownVault, "vault " + std::to_string(id.value));
  return it->second;
}

Vault& Ledger::mutable_vault(VaultId id) {
  auto it = vaults_.find(id);
  if (it == vaults_.end()) throw Error(Errc::UnknownVault, "vault " + std::to_string(id.value));
  return it->second;
}

VaultId Ledger::open(AgentId owner) {
  VaultId id{next_vault_++};
  vaults_.emplace(id, Vault{owner, {}, {}, std::nullopt});
  return id;
}

void Ledger::slip(AgentId who, const Wad& amount) {
  if (amount.is_negative()) throw Error(Errc::InsufficientGem, "negative slip");
  credit(gem_, who, amount);
}

const Vault& Ledger::frob(VaultId id, AgentId caller, const Wad& dink, const Wad& dart) {
  Vault& v = mutable_vault(id);
  if (v.owner != caller) throw Error(Errc::NotOwner, "vault " + std::to_string(id.value));

  Vault next = v;
  next.ink += dink;
  next.art += dart;
  if (next.ink.is_negative() || next.art.is_negative()) {
    throw Error(Errc::InsufficientBalance, "vault position would go negative");
  }
  if (!dink.is_negative() && gem(caller) < dink) {
    throw Error(Errc::InsufficientGem, "cannot lock " + dink.to_string());
  }
  const Rad dtab = dart * ilk_.rate;
  if (dtab.is_negative() && dai(caller) < -dtab) {
    throw Error(Errc::InsufficientBalance, "cannot repay " + (-dtab).to_string());
  }
  const Rad tab = next.art * ilk_.rate;
  const bool riskier = dart.raw() > 0 || dink.raw() < 0;
  if (riskier && tab > next.ink * ilk_.spot) {
    throw Error(Errc::NotSafe, "vault " + std::to_string(id.value));
  }
  if (!next.art.is_zero() && tab < ilk_.dust) {
    throw Error(Errc::Dust, "vault " + std::to_string(id.value));
  }

  if (dink.raw() > 0) debit(gem_, caller, dink, Errc::InsufficientGem);
  if (dink.raw() < 0) credit(gem_, caller, -dink);
  if (dtab.raw() > 0) credit(dai_, caller, dtab);
  if (dtab.raw() < 0) debit(dai_, caller, -dtab, Errc::InsufficientBalance);

  ilk_.total_art += dart;
  debt_ += dtab;
  if (next.unsafe_since && !unsafe(next)) next.unsafe_since.reset();
  v = std::move(next);
  return v;
}

bool Ledger::unsafe(const Vault& v) const { return v.ink * ilk_.spot < v.art * ilk_.rate; }

PokeResult Ledger::poke(const Wad& feed_price, Timestep now) {
  if (feed_price.raw() <= 0) throw Error(Errc::ValidationError, "feed price must be positive");
  now_ = now;
  ilk_.feed_price = feed_price;
  ilk_.spot = rdiv(to_ray(feed_price), ilk_.mat);

  PokeResult result{ilk_.spot};
  for (auto& [id, v] : vaults_) {
    const bool is_bad = unsafe(v);
    if (is_bad && !v.unsafe_since) {
      v.unsafe_since = now;
      ++result.newly_unsafe;
    } else if (!is_bad && v.unsafe_since) {
      v.unsafe_since.reset();
      ++result.recovered;
    }
  }
  return result;
}

bool Ledger::is_unsafe(VaultId id) const { return unsafe(vault(id)); }

std::pair<Wad, Wad> Ledger::grab(VaultId id, AgentId sink) {
  Vault& v = mutable_vault(id);
  std::pair<Wad, Wad> seized{v.ink, v.art};
  if (v.ink.is_zero() && v.art.is_zero()) return seized;

  const Rad tab = v.art * ilk_.rate;
  credit(gem_, sink, v.ink);
  ilk_.total_art -= v.art;
  sin_ += tab;
  vice_ += tab;
  v.ink = Wad{};
  v.art = Wad{};
  v.unsafe_since.reset();
  return seized;
}

void Ledger::suck(AgentId recipient, const Rad& amount) {
  if (amount.is_negative()) throw Error(Errc::InsufficientBalance, "negative suck");
  if (amount.is_zero()) return;
  credit(dai_, recipient, amount);
  sin_ += amount;
  vice_ += amount;
  debt_ += amount;
  total_sucked_ += amount;
}

void Ledger::heal(const Rad& amount) {
  if (amount.is_negative()) throw Error(Errc::InsufficientBalance, "negative heal");
  if (amount.is_zero()) return;
  if (sin_ < amount) throw Error(Errc::InsufficientBalance, "heal exceeds sin");
  debit(dai_, kVow, amount, Errc::InsufficientBalance);
  sin_ -= amount;
  vice_ -= amount;
  debt_ -= amount;
}

void Ledger::move_dai(AgentId from, AgentId to, const Rad& amount) {
  if (amount.is_negative()) throw Error(Errc::InsufficientBalance, "negative transfer");
  if (amount.is_zero()) return;
  debit(dai_, from, amount, Errc::InsufficientBalance);
  credit(dai_, to, amount);
}

void Ledger::move_gem(AgentId from, AgentId to, const Wad& amount) {
  if (amount.is_negative()) throw Error(Errc::InsufficientBalance, "negative transfer");
  if (amount.is_zero()) return;
  debit(gem_, from, amount, Errc::InsufficientBalance);
  credit(gem_, to, amount);
}

Rad Ledger::dai(AgentId who) const {
  auto it = dai_.find(who);
  return it == dai_.end() ? Rad{} : it->second;
}

Wad Ledger::gem(AgentId who) const {
  auto it = gem_.find(who);
  return it == gem_.end() ? Wad{} : it->second;
}

Wad Ledger::total_collateral() const {
  Wad total;
  for (const auto& [_, g] : gem_) total += g;
  for (const auto& [_, v] : vaults_) total += v.ink;
  return total;
}

int Ledger::unsafe_count() const {
  int n = 0;
  for (const auto& [_, v] : vaults_) n += v.unsafe_since.has_value();
  return n;
}

std::optional<std::string> Ledger::check_invariants() const {
  Rad dai_sum;
  for (const auto& [who, bal] : dai_) {
    if (bal.is_negative()) return "negative dai balance for agent " + std::to_string(who.value);
    dai_sum += bal;
  }
  for (const auto& [who, bal] : gem_) {
    if (bal.is_negative()) return "negative gem balance for agent " + std::to_string(who.value);
  }
  Wad art_sum;
  for (const auto& [id, v] : vaults_) {
    if (v.ink.is_negative() || v.art.is_negative()) {
      return "negative position in vault " + std::to_string(id.value);
    }
    art_sum += v.art;
  }
  if (art_sum != ilk_.total_art) return "total_art != sum of vault art";
  if (dai_sum != debt_) return "sum of dai balances != debt";
  if (debt_ != ilk_.total_art * ilk_.rate + vice_) return "debt != total_art * rate + vice";
  if (vice_ != sin_) return "vice != sin";
  if (sin_.is_negative()) return "negative sin";
  return std::nullopt;
}

}  // namespace liqsim
