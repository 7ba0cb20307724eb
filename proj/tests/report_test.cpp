#include "helpers.hpp"
#include "liqsim/report.hpp"
#include "liqsim/sweep.hpp"

#include <doctest.h>

#include <fstream>
#include <regex>
#include <sstream>

using namespace liqsim;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("liqsim_report_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<CellResult> one_cell() {
  SweepConfig c;
  c.chips = {0.001};
  c.tips = {100};
  c.runs = 1;
  c.base_seed = 3;
  static const Timeframe tf = load_timeframe(liqsim::testing::crash_fixture());
  return run_sweep_serial(c, {tf});
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("one cell gives one SVG and one CSV row") {
    auto cells = one_cell();
    fs::path out = scratch("one");
    auto written = render_report(cells, out);
    CHECK(written.size() == 4);

    std::string csv = slurp(out / "cells.csv");
    std::istringstream lines(csv);
    std::string header, row, extra;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == kCellsHeader);
    CHECK(row.rfind("crash_day,0.001,100,0,", 0) == 0);
    CHECK_FALSE(std::getline(lines, extra));

    int svgs = 0;
    for (const auto& e : fs::directory_iterator(out / "svg")) svgs += e.path().extension() == ".svg";
    CHECK(svgs == 1);
    CHECK(fs::exists(out / "svg" / "crash_day_chip-0.001_tip-100.svg"));
    CHECK(fs::exists(out / "series" / "crash_day_chip-0.001_tip-100.csv"));

    auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
    REQUIRE(summary["cells"].size() == 1);
    CHECK(summary["cells"][0]["baseline"] == true);
    CHECK(summary["cells"][0]["cost_effectiveness"].is_null());
    fs::remove_all(out);
  }

  TEST_CASE("empty results are refused without writing") {
    fs::path out = scratch("empty");
    try {
      render_report({}, out);
      FAIL("expected IoError");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::IoError);
      CHECK(std::string(e.what()).find("no results") != std::string::npos);
    }
    CHECK_FALSE(fs::exists(out));
  }

  TEST_CASE("SVG panels span exactly [0, n_timesteps]") {
    auto cells = one_cell();
    std::string svg = cell_svg(*cells[0].sample, "t");
    std::regex axis("class=\"x-axis\" data-min=\"([0-9]+)\" data-max=\"([0-9]+)\"");
    int panels = 0;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), axis); it != std::sregex_iterator(); ++it) {
      CHECK((*it)[1] == "0");
      CHECK((*it)[2] == "144");
      ++panels;
    }
    CHECK(panels == 4);
    // Every plotted x lies within the axis line.
    std::regex line("<line x1=\"([0-9.]+)\" y1=\"[0-9.]+\" x2=\"([0-9.]+)\"");
    std::smatch m;
    REQUIRE(std::regex_search(svg, m, line));
    const double x_lo = std::stod(m[1]), x_hi = std::stod(m[2]);
    std::regex poly("points=\"([^\"]*)\"");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), poly); it != std::sregex_iterator(); ++it) {
      std::istringstream pts((*it)[1].str());
      std::string pt;
      int count = 0;
      while (pts >> pt) {
        double x = std::stod(pt.substr(0, pt.find(',')));
        CHECK(x >= x_lo);
        CHECK(x <= x_hi);
        ++count;
      }
      CHECK(count == 144);
    }
  }

  TEST_CASE("series CSV round-trips exactly") {
    auto cells = one_cell();
    const RunSummary& s = *cells[0].sample;
    std::string text = series_csv(s);
    CHECK(text.rfind(std::string(kSeriesHeader) + "\n0,", 0) == 0);
    std::istringstream in(text);
    RunSummary back = parse_series_csv(in);
    CHECK(back.n_timesteps == 144);
    for (const char* name : {"n_unsafe", "n_liquidations", "incentives_paid"}) {
      CHECK(back.series.at(name) == s.series.at(name));
    }
    std::istringstream bad("timestep,x\n");
    CHECK_THROWS_AS(parse_series_csv(bad), Error);
  }

  TEST_CASE("cells CSV round-trips through aggregation") {
    CellResult c;
    c.timeframe = "d";
    c.chip = 0.001;
    c.tip = 100;
    RunResult a, b;
    a.run = 0;
    a.avg_response_time = 2.5;
    a.total_incentives = 1234.5;
    b.run = 1;
    b.total_incentives = 0;
    c.runs = {a, b};
    std::vector<CellResult> cells{c};
    aggregate(cells);
    std::string text = cells_csv(cells);
    CHECK(text == std::string(kCellsHeader) + "\nd,0.001,100,0,2.5,1234.5\nd,0.001,100,1,,0\n");
    std::istringstream in(text);
    auto back = parse_cells_csv(in);
    REQUIRE(back.size() == 1);
    CHECK(back[0].runs.size() == 2);
    CHECK(*back[0].mean_response_time == 2.5);
    CHECK(back[0].mean_incentives == 617.25);
    CHECK(cells_csv(back) == text);

    std::istringstream bad(std::string(kCellsHeader) + "\nd,x,100,0,1,1\n");
    CHECK_THROWS_AS(parse_cells_csv(bad), Error);
  }

  TEST_CASE("slugs and number formatting") {
    CHECK(cell_slug("2021-05-19", 0.01, 1000) == "2021-05-19_chip-0.01_tip-1000");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(7.126) == "7.126");
  }
}
