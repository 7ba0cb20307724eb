// liqsim: command-line front end.
//
//   liqsim simulate --config <json> --data <csv> --chip <f> --tip <f> --seed <u64>
//                   [--runs N] [--out DIR] [--dump-state]
//   liqsim sweep    --config <json> --data-dir <dir> [--jobs N] --out DIR
//   liqsim metrics  --baseline <rt,inc> --variant <rt,inc>
//   liqsim report   --in DIR [--svg]
//
// Exit status: 0 success, 1 validation error, 2 I/O error.
#include "liqsim/config.hpp"
#include "liqsim/engine.hpp"
#include "liqsim/errors.hpp"
#include "liqsim/metrics.hpp"
#include "liqsim/report.hpp"
#include "liqsim/sweep.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace liqsim;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

MetricPoint parse_point(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(Errc::ValidationError, "expected '<rt>,<incentive>', got '" + text + "'");
  try {
    return MetricPoint{std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw Error(Errc::ValidationError, "expected '<rt>,<incentive>', got '" + text + "'");
  }
}

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : "-"; }

void print_table(const std::vector<CellResult>& cells) {
  std::printf("%-24s %8s %8s %5s %12s %14s %14s\n", "timeframe", "chip", "tip", "runs", "mean_rt", "mean_incentive",
              "cost_eff_%/DAI");
  for (const auto& c : cells) {
    std::printf("%-24s %8s %8s %5zu %12s %14.2f %14s%s\n", c.timeframe.c_str(), format_number(c.chip).c_str(),
                format_number(c.tip).c_str(), c.runs.size(),
                c.mean_response_time ? std::to_string(*c.mean_response_time).c_str() : "-", c.mean_incentives,
                c.baseline ? "baseline" : opt(c.cost_effectiveness).c_str(),
                c.error ? ("  error: " + *c.error).c_str() : "");
  }
}

std::vector<Timeframe> load_dir(const fs::path& dir, const SweepConfig& config) {
  if (!fs::is_directory(dir)) throw Error(Errc::IoError, "not a directory: " + dir.string());
  std::vector<fs::path> files;
  if (config.timeframes.empty()) {
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    for (const auto& name : config.timeframes) files.push_back(dir / (name + ".csv"));
  }
  if (files.empty()) throw Error(Errc::IoError, "no .csv timeframes in " + dir.string());
  std::vector<Timeframe> out;
  for (const auto& f : files) out.push_back(load_timeframe(f, config.base.ticks_per_timeframe));
  return out;
}

struct SimulateArgs {
  std::string config;
  std::string data;
  std::optional<double> chip;
  std::optional<double> tip;
  std::optional<std::uint64_t> seed;
  int runs = 1;
  std::string out;
  bool dump_state = false;
};

int cmd_simulate(const SimulateArgs& a) {
  SimConfig config;
  if (!a.config.empty()) {
    fs::path p = a.config;
    config = sim_config_from_json(load_json(p), p.parent_path());
  }
  if (!a.data.empty()) config.timeframe_path = a.data;
  if (config.timeframe_path.empty()) throw Error(Errc::ValidationError, "no timeframe: pass --data");
  if (a.chip) config.incentives.chip = Ray::from_double(*a.chip);
  if (a.tip) config.incentives.tip = Rad::from_double(*a.tip);
  if (a.seed) config.seed = *a.seed;
  if (a.runs < 1) throw Error(Errc::ValidationError, "--runs must be >= 1");
  config.validate();

  const Timeframe tf = load_timeframe(config.timeframe_path, config.ticks_per_timeframe);
  const std::uint64_t base_seed = config.seed;

  nlohmann::json runs = nlohmann::json::array();
  nlohmann::json states = nlohmann::json::array();
  std::vector<CellResult> cell(1);
  cell[0].timeframe = tf.name;
  cell[0].chip = config.incentives.chip.to_double();
  cell[0].tip = config.incentives.tip.to_double();
  for (int i = 0; i < a.runs; ++i) {
    SimConfig c = config;
    c.seed = run_seed(base_seed, tf.name, i);
    Simulation sim(c, tf);
    RunSummary s = sim.run();
    cell[0].runs.push_back(RunResult{i, c.seed, s.avg_response_time, s.total_incentives.to_double(), s.n_liquidations});
    if (!a.out.empty()) {
      write_file(fs::path(a.out) / ("series_" + std::to_string(i) + ".csv"), series_csv(s));
      if (a.dump_state) {
        write_file(fs::path(a.out) / ("state_" + std::to_string(i) + ".json"),
                   state_json(sim.ledger(), sim.clipper()).dump(2) + "\n");
      }
    } else if (a.dump_state) {
      states.push_back(state_json(sim.ledger(), sim.clipper()));
    }
    runs.push_back(to_json(s));
  }
  aggregate(cell);

  nlohmann::json result = {
      {"config", to_json(config)},
      {"mean_response_time",
       cell[0].mean_response_time ? nlohmann::json(*cell[0].mean_response_time) : nlohmann::json(nullptr)},
      {"mean_incentives", cell[0].mean_incentives},
      {"runs", runs},
  };
  if (!a.out.empty()) {
    write_file(fs::path(a.out) / "summary.json", result.dump(2) + "\n");
    write_file(fs::path(a.out) / "cells.csv", cells_csv(cell));
    print_table(cell);
  } else {
    if (a.dump_state) result["state"] = states;
    std::cout << result.dump(2) << "\n";
  }
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& data_dir, int jobs, const std::string& out,
              bool serial) {
  fs::path p = config_path;
  SweepConfig config = sweep_config_from_json(load_json(p), p.parent_path());
  std::vector<Timeframe> timeframes = load_dir(data_dir, config);
  auto cells = serial ? run_sweep_serial(config, timeframes) : run_sweep(config, timeframes, jobs);
  render_report(cells, out);
  print_table(cells);
  for (const auto& c : cells) {
    if (c.error) return kExitValidation;
  }
  return 0;
}

int cmd_metrics(const std::string& baseline, const std::string& variant) {
  double v = cost_effectiveness(parse_point(baseline), parse_point(variant));
  std::printf("%.6g\n", v);
  return 0;
}

int cmd_report(const std::string& in_dir, bool svg) {
  fs::path dir = in_dir;
  std::ifstream in(dir / "cells.csv");
  if (!in) throw Error(Errc::IoError, "cannot open " + (dir / "cells.csv").string());
  auto cells = parse_cells_csv(in);
  if (cells.empty()) throw Error(Errc::IoError, "no results in " + (dir / "cells.csv").string());
  print_table(cells);
  if (svg) {
    int written = 0;
    for (const auto& c : cells) {
      const std::string slug = cell_slug(c.timeframe, c.chip, c.tip);
      std::ifstream series(dir / "series" / (slug + ".csv"));
      if (!series) continue;
      RunSummary s = parse_series_csv(series);
      write_file(dir / "svg" / (slug + ".svg"), cell_svg(s, c.timeframe + "  chip " + format_number(c.chip) +
                                                                 "  tip " + format_number(c.tip) + "  (run 0)"));
      ++written;
    }
    std::printf("wrote %d svg chart(s) to %s\n", written, (dir / "svg").string().c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Liquidation auction incentive simulator"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run one parameter setting");
  simulate->add_option("--config", sim.config, "Run config (JSON)");
  simulate->add_option("--data", sim.data, "Feed CSV");
  simulate->add_option("--chip", sim.chip, "Proportional incentive");
  simulate->add_option("--tip", sim.tip, "Flat incentive (DAI)");
  simulate->add_option("--seed", sim.seed, "Base seed");
  simulate->add_option("--runs", sim.runs, "Independent runs")->default_val(1);
  simulate->add_option("--out", sim.out, "Output directory");
  simulate->add_flag("--dump-state", sim.dump_state, "Dump final protocol state as JSON");

  std::string sweep_config, data_dir, sweep_out;
  int jobs = 0;
  bool serial = false;
  auto* sweep = app.add_subcommand("sweep", "Sweep the chip x tip grid");
  sweep->add_option("--config", sweep_config, "Sweep config (JSON)")->required();
  sweep->add_option("--data-dir", data_dir, "Directory of feed CSVs")->required();
  sweep->add_option("--jobs", jobs, "Worker threads (0 = all cores)");
  sweep->add_option("--out", sweep_out, "Output directory")->required();
  sweep->add_flag("--serial", serial, "Use the single-threaded reference path");

  std::string baseline, variant;
  auto* metrics = app.add_subcommand("metrics", "Cost-effectiveness of a variant against a baseline");
  metrics->add_option("--baseline", baseline, "<response_time>,<incentive>")->required();
  metrics->add_option("--variant", variant, "<response_time>,<incentive>")->required();

  std::string report_in;
  bool svg = false;
  auto* report = app.add_subcommand("report", "Summarise a sweep output directory");
  report->add_option("--in", report_in, "Sweep output directory")->required();
  report->add_flag("--svg", svg, "Regenerate SVG charts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*simulate) return cmd_simulate(sim);
    if (*sweep) return cmd_sweep(sweep_config, data_dir, jobs, sweep_out, serial);
    if (*metrics) return cmd_metrics(baseline, variant);
    if (*report) return cmd_report(report_in, svg);
  } catch (const Error& e) {
    std::cerr << "liqsim: " << e.what() << "\n";
    return e.code() == Errc::IoError ? kExitIo : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "liqsim: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
