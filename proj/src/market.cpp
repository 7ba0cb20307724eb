#include "liqsim/market.hpp"

#include "liqsim/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string_view>

namespace liqsim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Wad parse_field(std::string_view field, std::size_t row, const char* column) {
  try {
    return Wad::from_decimal(field);
  } catch (const std::exception&) {
    throw Error(Errc::ParseError,
                "row " + std::to_string(row) + ": bad " + column + " '" + std::string(field) + "'");
  }
}

}  // namespace

Timeframe parse_timeframe(std::istream& in, std::string name, std::optional<std::size_t> expected_ticks) {
  Timeframe tf;
  tf.name = std::move(name);

  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::ParseError, "empty feed file");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  if (trim(line) != kFeedHeader) {
    throw Error(Errc::ParseError, "unexpected header '" + line + "'");
  }

  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    auto fields = split(line);
    if (fields.size() != 5) {
      throw Error(Errc::ParseError, "row " + std::to_string(row) + ": expected 5 columns");
    }
    FeedTick tick;
    auto ts = fields[0];
    auto [ptr, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), tick.timestamp);
    if (ec != std::errc{} || ptr != ts.data() + ts.size()) {
      throw Error(Errc::ParseError, "row " + std::to_string(row) + ": bad timestamp");
    }
    tick.eth_price = parse_field(fields[1], row, "eth_price_dai");
    tick.gas_price = parse_field(fields[2], row, "gas_price_gwei");
    tick.eth_reserve = parse_field(fields[3], row, "uniswap_eth_reserve");
    tick.dai_reserve = parse_field(fields[4], row, "uniswap_dai_reserve");

    for (const Wad* w : {&tick.eth_price, &tick.gas_price, &tick.eth_reserve, &tick.dai_reserve}) {
      if (w->raw() <= 0) {
        throw Error(Errc::ValidationError, "row " + std::to_string(row) + ": values must be positive");
      }
    }
    if (!tf.ticks.empty()) {
      const auto prev = tf.ticks.back().timestamp;
      if (tick.timestamp <= prev) {
        throw Error(Errc::ValidationError, "row " + std::to_string(row) + ": timestamps not increasing");
      }
      if (tick.timestamp - prev != kTickSeconds) {
        throw Error(Errc::ValidationError, "row " + std::to_string(row) + ": cadence is not 600 s");
      }
    }
    tf.ticks.push_back(std::move(tick));
  }

  if (tf.ticks.size() < 2) throw Error(Errc::ValidationError, "timeframe needs at least 2 ticks");
  if (expected_ticks && tf.ticks.size() != *expected_ticks) {
    throw Error(Errc::ValidationError, "expected " + std::to_string(*expected_ticks) + " ticks, got " +
                                           std::to_string(tf.ticks.size()));
  }
  return tf;
}

Timeframe load_timeframe(const std::filesystem::path& path, std::optional<std::size_t> expected_ticks) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  try {
    return parse_timeframe(in, path.stem().string(), expected_ticks);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void GasModel::validate() const {
  if (floor_units < 21000) throw Error(Errc::ConfigError, "gas floor must be >= 21000");
  if (mean_units <= floor_units) throw Error(Errc::ConfigError, "gas mean must exceed floor");
  if (sd_units < 0) throw Error(Errc::ConfigError, "gas sd must be non-negative");
}

std::int64_t sample_gas_units(const GasModel& model, Rng& rng) {
  double draw = truncated_normal(rng, static_cast<double>(model.mean_units), static_cast<double>(model.sd_units),
                                 static_cast<double>(model.floor_units), 1e12);
  return std::max<std::int64_t>(model.floor_units, std::llround(draw));
}

Rad gas_cost_dai(std::int64_t units, const Wad& gas_price_gwei, const Wad& eth_price) {
  // units * (g / 1e18) * 1e-9 * (p / 1e18) DAI, scaled by 1e45, is units * g * p.
  return Rad::from_raw(Int(units) * gas_price_gwei.raw() * eth_price.raw());
}

Rad amm_out(const Wad& amount_in, const FeedTick& tick) {
  if (amount_in.raw() <= 0) return Rad{};
  const Int in_with_fee = amount_in.raw() * 997;
  const Int numerator = in_with_fee * tick.dai_reserve.raw() * Ray::one_raw();
  const Int denominator = tick.eth_reserve.raw() * 1000 + in_with_fee;
  return Rad::from_raw(numerator / denominator);
}

}  // namespace liqsim
