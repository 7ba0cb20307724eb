#include "liqsim/report.hpp"

#include "liqsim/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

namespace liqsim {

using nlohmann::json;

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    if (!field.empty() && field.back() == '\r') field.pop_back();
    out.push_back(field);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, std::string("bad ") + what + " '" + s + "'");
  }
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string fmt(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_number(double v) { return shortest_decimal(v); }

std::string cells_csv(const std::vector<CellResult>& cells) {
  std::string out = kCellsHeader;
  out += '\n';
  for (const auto& cell : cells) {
    for (const auto& r : cell.runs) {
      out += cell.timeframe + ',' + format_number(cell.chip) + ',' + format_number(cell.tip) + ',' +
             std::to_string(r.run) + ',' + (r.avg_response_time ? format_number(*r.avg_response_time) : "") + ',' +
             format_number(r.total_incentives) + '\n';
    }
  }
  return out;
}

std::vector<CellResult> parse_cells_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::ParseError, "empty cells file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCellsHeader) throw Error(Errc::ParseError, "unexpected cells header '" + line + "'");

  std::vector<CellResult> cells;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto f = split_csv(line);
    if (f.size() != 6) throw Error(Errc::ParseError, "cells row needs 6 fields: '" + line + "'");
    const double chip = parse_double(f[1], "chip");
    const double tip = parse_double(f[2], "tip");
    RunResult r;
    r.run = static_cast<int>(parse_double(f[3], "run"));
    if (!f[4].empty()) r.avg_response_time = parse_double(f[4], "avg_response_time");
    r.total_incentives = parse_double(f[5], "total_incentives");

    auto it = std::find_if(cells.begin(), cells.end(), [&](const CellResult& c) {
      return c.timeframe == f[0] && c.chip == chip && c.tip == tip;
    });
    if (it == cells.end()) {
      CellResult c;
      c.timeframe = f[0];
      c.chip = chip;
      c.tip = tip;
      cells.push_back(std::move(c));
      it = std::prev(cells.end());
    }
    it->runs.push_back(r);
  }
  for (auto& c : cells) {
    std::sort(c.runs.begin(), c.runs.end(), [](const RunResult& a, const RunResult& b) { return a.run < b.run; });
  }
  aggregate(cells);
  return cells;
}

json summary_json(const std::vector<CellResult>& cells) {
  json arr = json::array();
  for (const auto& c : cells) {
    json runs = json::array();
    for (const auto& r : c.runs) {
      runs.push_back({{"run", r.run},
                      {"seed", r.seed},
                      {"avg_response_time", optional_number(r.avg_response_time)},
                      {"total_incentives", r.total_incentives},
                      {"n_liquidations", r.n_liquidations}});
    }
    arr.push_back({{"timeframe", c.timeframe},
                   {"chip", c.chip},
                   {"tip", c.tip},
                   {"baseline", c.baseline},
                   {"mean_response_time", optional_number(c.mean_response_time)},
                   {"mean_incentives", c.mean_incentives},
                   {"cost_effectiveness", optional_number(c.cost_effectiveness)},
                   {"error", c.error ? json(*c.error) : json(nullptr)},
                   {"runs", runs}});
  }
  return {{"cells", arr}};
}

std::string series_csv(const RunSummary& s) {
  static const char* names[] = {"n_unsafe", "n_liquidations", "incentives_paid"};
  std::string out = kSeriesHeader;
  out += '\n';
  for (std::size_t t = 0; t < s.n_timesteps; ++t) {
    out += std::to_string(t);
    for (const char* name : names) {
      out += ',';
      auto it = s.series.find(name);
      if (it != s.series.end() && t < it->second.size()) out += it->second[t].to_string();
    }
    out += '\n';
  }
  return out;
}

RunSummary parse_series_csv(std::istream& in) {
  static const char* names[] = {"n_unsafe", "n_liquidations", "incentives_paid"};
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::ParseError, "empty series file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSeriesHeader) throw Error(Errc::ParseError, "unexpected series header '" + line + "'");
  RunSummary s;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto f = split_csv(line);
    if (f.size() != 4) throw Error(Errc::ParseError, "series row needs 4 fields");
    for (int i = 0; i < 3; ++i) {
      try {
        s.series[names[i]].push_back(f[i + 1].empty() ? Rad{} : Rad::from_decimal(f[i + 1]));
      } catch (const std::invalid_argument&) {
        throw Error(Errc::ParseError, "bad series value '" + f[i + 1] + "'");
      }
    }
    ++s.n_timesteps;
  }
  return s;
}

std::string cell_svg(const RunSummary& s, const std::string& title) {
  constexpr double kWidth = 800, kLeft = 70, kRight = 20, kTop = 40, kPanel = 130, kGap = 30;
  const double n = static_cast<double>(s.n_timesteps);
  const double plot_w = kWidth - kLeft - kRight;
  auto x_of = [&](double t) { return kLeft + (n > 0 ? t / n : 0) * plot_w; };

  std::vector<std::pair<std::string, std::vector<double>>> panels;
  auto values = [&](const char* name) {
    std::vector<double> v(s.n_timesteps, 0.0);
    auto it = s.series.find(name);
    if (it != s.series.end()) {
      for (std::size_t t = 0; t < v.size() && t < it->second.size(); ++t) v[t] = it->second[t].to_double();
    }
    return v;
  };
  panels.emplace_back("Number of unsafe vaults", values("n_unsafe"));
  panels.emplace_back("Number of liquidations", values("n_liquidations"));
  auto paid = values("incentives_paid");
  panels.emplace_back("Incentive amount paid (DAI)", paid);
  std::vector<double> cumulative(paid.size());
  double acc = 0;
  for (std::size_t t = 0; t < paid.size(); ++t) cumulative[t] = acc += paid[t];
  panels.emplace_back("Cumulative incentives (DAI)", cumulative);

  const double height = kTop + panels.size() * (kPanel + kGap) + 20;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth, 0) << "\" height=\"" << fmt(height, 0)
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << fmt(kLeft, 0) << "\" y=\"22\" font-size=\"14\">" << escape_xml(title) << "</text>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const auto& [label, v] = panels[p];
    const double y0 = kTop + p * (kPanel + kGap);
    const double y1 = y0 + kPanel;
    double vmax = 0;
    for (double x : v) vmax = std::max(vmax, x);
    if (vmax <= 0) vmax = 1;
    auto y_of = [&](double val) { return y1 - val / vmax * kPanel; };

    svg << "<g class=\"panel\" data-label=\"" << escape_xml(label) << "\">\n";
    svg << "<text x=\"" << fmt(kLeft, 0) << "\" y=\"" << fmt(y0 - 4) << "\">" << escape_xml(label) << "</text>\n";
    svg << "<g class=\"x-axis\" data-min=\"0\" data-max=\"" << s.n_timesteps << "\">"
        << "<line x1=\"" << fmt(x_of(0)) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x_of(n)) << "\" y2=\""
        << fmt(y1) << "\" stroke=\"black\"/>"
        << "<text x=\"" << fmt(x_of(0)) << "\" y=\"" << fmt(y1 + 12) << "\" text-anchor=\"middle\">0</text>"
        << "<text x=\"" << fmt(x_of(n)) << "\" y=\"" << fmt(y1 + 12) << "\" text-anchor=\"middle\">"
        << s.n_timesteps << "</text></g>\n";
    svg << "<g class=\"y-axis\" data-min=\"0\" data-max=\"" << format_number(vmax) << "\">"
        << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(kLeft) << "\" y2=\"" << fmt(y1)
        << "\" stroke=\"black\"/>"
        << "<text x=\"" << fmt(kLeft - 4) << "\" y=\"" << fmt(y0 + 4) << "\" text-anchor=\"end\">" << fmt(vmax, 0)
        << "</text></g>\n";
    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t t = 0; t < v.size(); ++t) {
      if (t) svg << ' ';
      svg << fmt(x_of(static_cast<double>(t))) << ',' << fmt(y_of(v[t]));
    }
    svg << "\"/>\n</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string cell_slug(const std::string& timeframe, double chip, double tip) {
  return timeframe + "_chip-" + format_number(chip) + "_tip-" + format_number(tip);
}

json to_json(const RunSummary& s) {
  json series = json::object();
  for (const auto& [name, values] : s.series) {
    json arr = json::array();
    for (const auto& v : values) arr.push_back(v.to_double());
    series[name] = arr;
  }
  json episodes = json::array();
  for (const auto& e : s.episodes) {
    episodes.push_back({{"vault", e.vault.value}, {"onset", e.onset}, {"liquidated", e.liquidated}});
  }
  json executed = json::object();
  json failed = json::object();
  for (std::size_t k = 0; k < kActionKinds; ++k) {
    const std::string name(to_string(static_cast<ActionKind>(k)));
    executed[name] = s.executed[k];
    failed[name] = s.failed[k];
  }
  return {{"timeframe", s.timeframe},
          {"seed", s.seed},
          {"chip", s.chip.to_string()},
          {"tip", s.tip.to_string()},
          {"n_timesteps", s.n_timesteps},
          {"avg_response_time", optional_number(s.avg_response_time)},
          {"total_incentives", s.total_incentives.to_string()},
          {"n_liquidations", s.n_liquidations},
          {"n_redos", s.n_redos},
          {"n_takes", s.n_takes},
          {"exogenous_dai", s.exogenous_dai.to_string()},
          {"sentinels", {{"start", s.sentinel_starts}, {"end", s.sentinel_ends}}},
          {"executed", executed},
          {"failed", failed},
          {"episodes", episodes},
          {"series", series}};
}

json state_json(const Ledger& ledger, const Clipper& clipper) {
  const Ilk& ilk = ledger.ilk();
  json vaults = json::array();
  for (const auto& [id, v] : ledger.vaults()) {
    vaults.push_back({{"id", id.value},
                      {"owner", v.owner.value},
                      {"ink", v.ink.to_string()},
                      {"art", v.art.to_string()},
                      {"unsafe_since", v.unsafe_since ? json(*v.unsafe_since) : json(nullptr)}});
  }
  json dai = json::object();
  for (const auto& [who, bal] : ledger.dai_balances()) dai[std::to_string(who.value)] = bal.to_string();
  json gem = json::object();
  for (const auto& [who, bal] : ledger.gem_balances()) gem[std::to_string(who.value)] = bal.to_string();
  json auctions = json::array();
  for (const auto& [id, a] : clipper.auctions()) {
    auctions.push_back({{"id", id.value},
                        {"lot", a.lot.to_string()},
                        {"tab", a.tab.to_string()},
                        {"top", a.top.to_string()},
                        {"tic", a.tic},
                        {"usr", a.usr.value},
                        {"vault", a.vault.value}});
  }
  return {{"ilk",
           {{"spot", ilk.spot.to_string()},
            {"mat", ilk.mat.to_string()},
            {"rate", ilk.rate.to_string()},
            {"dust", ilk.dust.to_string()},
            {"total_art", ilk.total_art.to_string()},
            {"feed_price", ilk.feed_price.to_string()}}},
          {"vaults", vaults},
          {"dai", dai},
          {"gem", gem},
          {"sin", ledger.sin().to_string()},
          {"vice", ledger.vice().to_string()},
          {"debt", ledger.debt().to_string()},
          {"auctions", auctions}};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw Error(Errc::IoError, "cannot create " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(Errc::IoError, "write failed for " + path.string());
}

std::vector<std::filesystem::path> render_report(const std::vector<CellResult>& cells,
                                                 const std::filesystem::path& out_dir) {
  if (cells.empty()) throw Error(Errc::IoError, "no results to report; nothing written");
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::filesystem::path& p, const std::string& content) {
    write_file(p, content);
    written.push_back(p);
  };
  emit(out_dir / "cells.csv", cells_csv(cells));
  emit(out_dir / "summary.json", summary_json(cells).dump(2) + "\n");
  for (const auto& c : cells) {
    if (!c.sample) continue;
    const std::string slug = cell_slug(c.timeframe, c.chip, c.tip);
    emit(out_dir / "series" / (slug + ".csv"), series_csv(*c.sample));
    const std::string title = c.timeframe + "  chip " + format_number(c.chip) + "  tip " + format_number(c.tip) +
                              "  (run 0)";
    emit(out_dir / "svg" / (slug + ".svg"), cell_svg(*c.sample, title));
  }
  return written;
}

}  // namespace liqsim
