#include "liqsim/config.hpp"

#include "liqsim/errors.hpp"
#include "liqsim/sweep.hpp"

#include <fstream>
#include <initializer_list>
#include <string_view>

namespace liqsim {

using nlohmann::json;

namespace {

void check_keys(const json& j, std::string_view block, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw Error(Errc::ConfigError, std::string(block) + " must be an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw Error(Errc::ConfigError, "unknown key '" + key + "' in " + std::string(block));
  }
}

std::string decimal_text(const json& v, std::string_view key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return shortest_decimal(v.get<double>());
  throw Error(Errc::ConfigError, std::string(key) + " must be a number or decimal string");
}

template <int D>
void read_fixed(const json& j, std::string_view key, Fixed<D>& out) {
  if (!j.contains(key)) return;
  try {
    out = Fixed<D>::from_decimal(decimal_text(j.at(std::string(key)), key));
  } catch (const std::invalid_argument& e) {
    throw Error(Errc::ConfigError, std::string(key) + ": " + e.what());
  }
}

template <typename T>
void read(const json& j, std::string_view key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(std::string(key)).get<T>();
  } catch (const json::exception& e) {
    throw Error(Errc::ConfigError, std::string(key) + ": " + e.what());
  }
}

void read_distribution(const json& j, std::string_view key, Distribution& d,
                       std::initializer_list<std::pair<std::string_view, double*>> extras = {}) {
  if (!j.contains(key)) return;
  const json& block = j.at(std::string(key));
  if (!block.is_object()) throw Error(Errc::ConfigError, std::string(key) + " must be an object");
  for (const auto& [k, _] : block.items()) {
    bool ok = k == "mean" || k == "sd";
    for (const auto& [name, ptr] : extras) ok = ok || k == name;
    if (!ok) throw Error(Errc::ConfigError, "unknown key '" + k + "' in " + std::string(key));
  }
  read(block, "mean", d.mean);
  read(block, "sd", d.sd);
  for (const auto& [name, ptr] : extras) read(block, name, *ptr);
}

double as_double(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return Ray::from_decimal(v.get<std::string>()).to_double();
  throw Error(Errc::ConfigError, "grid values must be numbers");
}

}  // namespace

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, path.string() + ": " + e.what());
  }
}

SimConfig sim_config_from_json(const json& j, const std::filesystem::path& base_dir) {
  check_keys(j, "config",
             {"seed", "timeframe", "ticks_per_timeframe", "incentives", "auction", "ilk", "gas", "population",
              "stats", "check_invariants", "sweep"});
  SimConfig c;
  read(j, "seed", c.seed);
  if (j.contains("timeframe")) {
    std::string text;
    read(j, "timeframe", text);
    std::filesystem::path p = text;
    c.timeframe_path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  }
  if (j.contains("ticks_per_timeframe")) {
    const auto& v = j.at("ticks_per_timeframe");
    if (v.is_null()) {
      c.ticks_per_timeframe.reset();
    } else {
      std::size_t n = 0;
      read(j, "ticks_per_timeframe", n);
      c.ticks_per_timeframe = n;
    }
  }
  if (j.contains("incentives")) {
    const auto& b = j.at("incentives");
    check_keys(b, "incentives", {"chip", "tip"});
    read_fixed(b, "chip", c.incentives.chip);
    read_fixed(b, "tip", c.incentives.tip);
  }
  if (j.contains("auction")) {
    const auto& b = j.at("auction");
    check_keys(b, "auction", {"buf", "tail", "cusp", "step_factor", "chop"});
    read_fixed(b, "buf", c.auction.buf);
    read(b, "tail", c.auction.tail);
    read_fixed(b, "cusp", c.auction.cusp);
    read_fixed(b, "step_factor", c.auction.step_factor);
    read_fixed(b, "chop", c.auction.chop);
  }
  if (j.contains("ilk")) {
    const auto& b = j.at("ilk");
    check_keys(b, "ilk", {"mat", "dust"});
    read_fixed(b, "mat", c.mat);
    read_fixed(b, "dust", c.dust);
  }
  if (j.contains("gas")) {
    const auto& b = j.at("gas");
    check_keys(b, "gas", {"mean_units", "sd_units", "floor_units"});
    read(b, "mean_units", c.gas.mean_units);
    read(b, "sd_units", c.gas.sd_units);
    read(b, "floor_units", c.gas.floor_units);
  }
  if (j.contains("population")) {
    const auto& b = j.at("population");
    check_keys(b, "population",
               {"n_vault", "n_spotter", "n_bark", "n_redo", "n_clipper", "eth_balance", "target_cr",
                "desired_discount", "dai_budget"});
    auto& p = c.population;
    read(b, "n_vault", p.n_vault);
    read(b, "n_spotter", p.n_spotter);
    read(b, "n_bark", p.n_bark);
    read(b, "n_redo", p.n_redo);
    read(b, "n_clipper", p.n_clipper);
    read_distribution(b, "eth_balance", p.eth_balance, {{"min", &p.eth_balance_min}});
    read_distribution(b, "target_cr", p.target_cr, {{"margin", &p.target_cr_margin}});
    read_distribution(b, "desired_discount", p.desired_discount,
                      {{"min", &p.discount_min}, {"max", &p.discount_max}});
    read_distribution(b, "dai_budget", p.dai_budget);
  }
  read(j, "stats", c.stats);
  read(j, "check_invariants", c.check_invariants);
  c.validate();
  return c;
}

SweepConfig sweep_config_from_json(const json& j, const std::filesystem::path& base_dir) {
  SweepConfig s;
  s.base = sim_config_from_json(j, base_dir);
  s.base_seed = s.base.seed;
  if (j.contains("sweep")) {
    const auto& b = j.at("sweep");
    check_keys(b, "sweep", {"chips", "tips", "runs", "base_seed", "timeframes"});
    if (b.contains("chips")) {
      s.chips.clear();
      for (const auto& v : b.at("chips")) s.chips.push_back(as_double(v));
    }
    if (b.contains("tips")) {
      s.tips.clear();
      for (const auto& v : b.at("tips")) s.tips.push_back(as_double(v));
    }
    read(b, "runs", s.runs);
    read(b, "base_seed", s.base_seed);
    read(b, "timeframes", s.timeframes);
  }
  s.validate();
  return s;
}

json to_json(const SimConfig& c) {
  const auto& p = c.population;
  json j = {
      {"seed", c.seed},
      {"timeframe", c.timeframe_path.string()},
      {"ticks_per_timeframe", c.ticks_per_timeframe ? json(*c.ticks_per_timeframe) : json(nullptr)},
      {"incentives", {{"chip", c.incentives.chip.to_string()}, {"tip", c.incentives.tip.to_string()}}},
      {"auction",
       {{"buf", c.auction.buf.to_string()},
        {"tail", c.auction.tail},
        {"cusp", c.auction.cusp.to_string()},
        {"step_factor", c.auction.step_factor.to_string()},
        {"chop", c.auction.chop.to_string()}}},
      {"ilk", {{"mat", c.mat.to_string()}, {"dust", c.dust.to_string()}}},
      {"gas", {{"mean_units", c.gas.mean_units}, {"sd_units", c.gas.sd_units}, {"floor_units", c.gas.floor_units}}},
      {"population",
       {{"n_vault", p.n_vault},
        {"n_spotter", p.n_spotter},
        {"n_bark", p.n_bark},
        {"n_redo", p.n_redo},
        {"n_clipper", p.n_clipper},
        {"eth_balance", {{"mean", p.eth_balance.mean}, {"sd", p.eth_balance.sd}, {"min", p.eth_balance_min}}},
        {"target_cr", {{"mean", p.target_cr.mean}, {"sd", p.target_cr.sd}, {"margin", p.target_cr_margin}}},
        {"desired_discount",
         {{"mean", p.desired_discount.mean},
          {"sd", p.desired_discount.sd},
          {"min", p.discount_min},
          {"max", p.discount_max}}},
        {"dai_budget", {{"mean", p.dai_budget.mean}, {"sd", p.dai_budget.sd}}}}},
      {"stats", c.stats},
      {"check_invariants", c.check_invariants},
  };
  return j;
}

}  // namespace liqsim
