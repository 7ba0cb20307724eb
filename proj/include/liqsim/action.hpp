#pragma once

#include "liqsim/clipper.hpp"
#include "liqsim/fixed_point.hpp"
#include "liqsim/ledger.hpp"

#include <string_view>
#include <variant>

namespace liqsim {

namespace action {

// Engine-generated sentinels; never produced by a keeper.
struct TimestepStart {};
struct TimestepEnd {};

struct OpenVault {
  Wad ink;
  Wad art;
};
struct Poke {
  Wad price;
};
struct Bark {
  VaultId vault;
};
struct Redo {
  AuctionId auction;
};
struct Take {
  AuctionId auction;
  Wad max_qty;
  Ray max_price;
};

}  // namespace action

// Order matches the variant alternatives below.
enum class ActionKind { TimestepStart, TimestepEnd, OpenVault, Poke, Bark, Redo, Take };
inline constexpr std::size_t kActionKinds = 7;

std::string_view to_string(ActionKind kind);

struct Action {
  using Payload = std::variant<action::TimestepStart, action::TimestepEnd, action::OpenVault, action::Poke,
                               action::Bark, action::Redo, action::Take>;

  AgentId actor;
  Payload payload;

  ActionKind kind() const { return static_cast<ActionKind>(payload.index()); }
};

}  // namespace liqsim
