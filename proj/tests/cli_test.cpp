#include "helpers.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using liqsim::testing::config_dir;
using liqsim::testing::crash_fixture;
using liqsim::testing::data_dir;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("liqsim_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// Runs the CLI with `args`, capturing stdout into `out` when given.
int cli(const std::string& args, const fs::path& out = {}) {
  std::string cmd = std::string("\"") + LIQSIM_CLI + "\" " + args;
  cmd += out.empty() ? " >/dev/null" : " >\"" + out.string() + "\"";
  cmd += " 2>/dev/null";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("metrics prints cost effectiveness") {
    fs::path dir = scratch("metrics");
    CHECK(cli("metrics --baseline 7.126,4705.33 --variant 1.0,38725.42", dir / "out.txt") == 0);
    CHECK(std::abs(std::stod(slurp(dir / "out.txt")) - 0.00253) <= 0.00003);
    CHECK(cli("metrics --baseline 7.126,4705.33 --variant 7.126,4705.33") == 1);
    CHECK(cli("metrics --baseline nonsense --variant 1,2") == 1);
    CHECK(cli("metrics --baseline 1,2") == 1);
  }

  TEST_CASE("usage errors exit with status 1") {
    CHECK(cli("") == 1);
    CHECK(cli("frobnicate") == 1);
    CHECK(cli("sweep --config x.json") == 1);
  }

  TEST_CASE("simulate writes outputs and reproduces itself") {
    fs::path dir = scratch("simulate");
    const std::string base = "simulate --config " + q(config_dir() / "simulate.json") + " --data " + q(crash_fixture()) +
                             " --chip 0.001 --tip 500 --seed 7";
    REQUIRE(cli(base + " --runs 2 --out " + q(dir / "a") + " --dump-state") == 0);
    REQUIRE(cli(base + " --runs 2 --out " + q(dir / "b")) == 0);
    for (const char* f : {"cells.csv", "summary.json", "series_0.csv", "series_1.csv", "state_0.json"}) {
      CAPTURE(f);
      CHECK(fs::exists(dir / "a" / f));
    }
    CHECK_FALSE(fs::exists(dir / "b" / "state_0.json"));
    CHECK(slurp(dir / "a" / "cells.csv") == slurp(dir / "b" / "cells.csv"));
    CHECK(slurp(dir / "a" / "series_1.csv") == slurp(dir / "b" / "series_1.csv"));
    std::string cells = slurp(dir / "a" / "cells.csv");
    CHECK(cells.rfind("timeframe,chip,tip,run,avg_response_time,total_incentives\ncrash_day,0.001,500,0,", 0) == 0);

    // Without --out the summary goes to stdout as JSON.
    REQUIRE(cli(base + " --dump-state", dir / "stdout.json") == 0);
    auto j = nlohmann::json::parse(slurp(dir / "stdout.json"));
    CHECK(j["runs"].size() == 1);
    CHECK(j["state"].size() == 1);
    CHECK(j["config"]["incentives"]["tip"] == "500");
  }

  TEST_CASE("simulate error statuses") {
    fs::path dir = scratch("simulate_err");
    CHECK(cli("simulate --data /nonexistent/feed.csv --chip 0.001 --tip 100 --seed 1") == 2);
    CHECK(cli("simulate --config /nonexistent/cfg.json --data " + q(crash_fixture())) == 2);
    CHECK(cli("simulate --data " + q(crash_fixture()) + " --chip 1.5 --tip 100 --seed 1") == 1);
    CHECK(cli("simulate --data " + q(crash_fixture()) + " --chip 0.001 --tip -1 --seed 1") == 1);
    CHECK(cli("simulate --data " + q(crash_fixture()) + " --runs 0") == 1);
    write(dir / "bad.json", "{ not json");
    CHECK(cli("simulate --config " + q(dir / "bad.json") + " --data " + q(crash_fixture())) == 1);
    write(dir / "unknown.json", R"({"incentives": {"chip": 0.1, "bonus": 3}})");
    CHECK(cli("simulate --config " + q(dir / "unknown.json") + " --data " + q(crash_fixture())) == 1);
    write(dir / "short.csv", "timestamp,eth_price_dai,gas_price_gwei,uniswap_eth_reserve,uniswap_dai_reserve\n"
                             "1621382400,3000,100,1000,3000000\n1621383000,3000,100,1000,3000000\n");
    CHECK(cli("simulate --data " + q(dir / "short.csv")) == 1);
  }

  TEST_CASE("sweep and report") {
    fs::path dir = scratch("sweep");
    write(dir / "cfg.json",
          R"({"seed": 3, "population": {"n_vault": 15},
              "sweep": {"chips": [0.001, 0.01], "tips": [100, 1000], "runs": 2}})");
    fs::create_directories(dir / "data");
    fs::copy_file(crash_fixture(), dir / "data" / "crash_day.csv");
    REQUIRE(cli("sweep --config " + q(dir / "cfg.json") + " --data-dir " + q(dir / "data") + " --out " +
                q(dir / "out")) == 0);
    REQUIRE(cli("sweep --serial --config " + q(dir / "cfg.json") + " --data-dir " + q(dir / "data") + " --out " +
                q(dir / "serial")) == 0);
    CHECK(slurp(dir / "out" / "cells.csv") == slurp(dir / "serial" / "cells.csv"));
    CHECK(slurp(dir / "out" / "summary.json") == slurp(dir / "serial" / "summary.json"));
    int svgs = 0;
    for (const auto& e : fs::directory_iterator(dir / "out" / "svg")) svgs += e.path().extension() == ".svg";
    CHECK(svgs == 4);

    fs::remove_all(dir / "out" / "svg");
    CHECK(cli("report --in " + q(dir / "out") + " --svg", dir / "report.txt") == 0);
    CHECK(slurp(dir / "report.txt").find("baseline") != std::string::npos);
    CHECK(fs::exists(dir / "out" / "svg" / "crash_day_chip-0.01_tip-1000.svg"));

    CHECK(cli("report --in " + q(dir / "missing")) == 2);
    CHECK(cli("sweep --config " + q(dir / "cfg.json") + " --data-dir " + q(dir / "nodata") + " --out " +
              q(dir / "x")) == 2);
    CHECK(cli("sweep --config " + q(dir / "nocfg.json") + " --data-dir " + q(dir / "data") + " --out " +
              q(dir / "x")) == 2);
  }

  TEST_CASE("bundled default config drives a sweep over the bundled data") {
    auto j = nlohmann::json::parse(slurp(config_dir() / "default.json"));
    CHECK(j["sweep"]["runs"] == 10);
    CHECK(fs::exists(data_dir() / "synthetic" / "crash_day.csv"));
  }
}
