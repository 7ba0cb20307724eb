// Historical market feeds, the gas-cost model and constant-product slippage.
#pragma once

#include "liqsim/fixed_point.hpp"
#include "liqsim/rng.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace liqsim {

inline constexpr std::int64_t kTickSeconds = 600;
inline constexpr std::size_t kTicksPerDay = 144;
inline constexpr const char* kFeedHeader =
    "timestamp,eth_price_dai,gas_price_gwei,uniswap_eth_reserve,uniswap_dai_reserve";

struct FeedTick {
  std::int64_t timestamp = 0;
  Wad eth_price;    // DAI per ETH
  Wad gas_price;    // gwei
  Wad eth_reserve;  // AMM ETH side
  Wad dai_reserve;  // AMM DAI side
};

struct Timeframe {
  std::string name;
  std::vector<FeedTick> ticks;

  std::size_t size() const { return ticks.size(); }
};

/// Parses feed CSV from a stream. `expected_ticks` enforces an exact length
/// (144 for one-day frames); pass nullopt to accept any length >= 2.
/// Throws ParseError for malformed rows and ValidationError for bad values
/// or cadence.
Timeframe parse_timeframe(std::istream& in, std::string name,
                          std::optional<std::size_t> expected_ticks = kTicksPerDay);

/// File variant; the timeframe is named after the file stem. Throws IoError
/// when the file cannot be opened.
Timeframe load_timeframe(const std::filesystem::path& path,
                         std::optional<std::size_t> expected_ticks = kTicksPerDay);

struct GasModel {
  std::int64_t mean_units = 300000;
  std::int64_t sd_units = 30000;
  std::int64_t floor_units = 21000;

  void validate() const;
};

/// Normal(mean, sd) rounded to an integer and floored at floor_units.
std::int64_t sample_gas_units(const GasModel& model, Rng& rng);

/// units * gas_price[gwei] * 1e-9 * eth_price, in DAI. Exact.
Rad gas_cost_dai(std::int64_t units, const Wad& gas_price_gwei, const Wad& eth_price);

/// DAI received for selling amount_in ETH into the tick's constant-product
/// pool with a 0.3% fee. Truncated at rad precision.
Rad amm_out(const Wad& amount_in, const FeedTick& tick);

}  // namespace liqsim
