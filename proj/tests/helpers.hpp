#pragma once

#include "liqsim/market.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace liqsim::testing {

inline std::filesystem::path data_dir() { return LIQSIM_DATA_DIR; }
inline std::filesystem::path config_dir() { return LIQSIM_CONFIG_DIR; }
inline std::filesystem::path crash_fixture() { return data_dir() / "synthetic" / "crash_day.csv"; }
inline std::filesystem::path flat_fixture() { return data_dir() / "synthetic" / "flat_day.csv"; }

inline FeedTick tick(double price, double gas = 100, double eth_reserve = 100000, double dai_reserve = 0,
                     std::int64_t ts = 1621382400) {
  FeedTick t;
  t.timestamp = ts;
  t.eth_price = Wad::from_double(price);
  t.gas_price = Wad::from_double(gas);
  t.eth_reserve = Wad::from_double(eth_reserve);
  t.dai_reserve = Wad::from_double(dai_reserve > 0 ? dai_reserve : eth_reserve * price);
  return t;
}

/// Timeframe with the given prices, constant gas and a pool priced at the feed.
inline Timeframe make_frame(const std::vector<double>& prices, double gas = 100, std::string name = "test") {
  Timeframe tf;
  tf.name = std::move(name);
  for (std::size_t i = 0; i < prices.size(); ++i) {
    tf.ticks.push_back(tick(prices[i], gas, 100000, 0, 1621382400 + static_cast<std::int64_t>(i) * kTickSeconds));
  }
  return tf;
}

inline Wad wad(const char* s) { return Wad::from_decimal(s); }
inline Ray ray(const char* s) { return Ray::from_decimal(s); }
inline Rad rad(const char* s) { return Rad::from_decimal(s); }

}  // namespace liqsim::testing
