// Copyright 2026 The hqasim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hqasim/commands.h"
#include "hqasim/run_config.h"

namespace hqasim {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "hqasim_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove(p);
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(HQASIM_CLI_PATH) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

TEST_CASE("key=value parsing with comments") {
  std::istringstream in("# header\n t = 0.9 \npa=0.8 # trailing\n\nscenario=fock-hpa\n");
  const KeyValues kv = parse_key_values(in);
  REQUIRE(kv.size() == 3);
  CHECK(kv[0] == std::pair<std::string, std::string>{"t", "0.9"});
  const RunConfig c = build_run_config(kv);
  CHECK(c.params.t == 0.9);
  CHECK(c.params.p_a == 0.8);
  CHECK(c.scenario == Scenario::kFockHpa);

  std::istringstream bad("t 0.9\n");
  CHECK_THROWS_AS(parse_key_values(bad), ConfigParseError);
  CHECK_THROWS_AS(build_run_config({{"nope", "1"}}), ConfigParseError);
  CHECK_THROWS_AS(build_run_config({{"t", "abc"}}), ConfigParseError);
}

TEST_CASE("presets apply before explicit keys") {
  const RunConfig c = build_run_config({{"t", "0.5"}, {"preset", "fig4"}});
  CHECK(c.params.t == 0.5);
  CHECK(c.params.p_in == 0.47);
  CHECK(c.params.p_a == 0.296);
  CHECK(c.scenario == Scenario::kTimeBinHqa);
  CHECK(build_run_config({{"preset", "paper-dashed"}}).params.p_a == 0.9);
  CHECK_THROWS_AS(build_run_config({{"preset", "nope"}}), ConfigParseError);
  CHECK(std::abs(build_run_config({{"mu2", "0.92"}}).params.mu - std::sqrt(0.92)) < 1e-15);
}

TEST_CASE("range validation") {
  CHECK_THROWS_AS(build_run_config({{"t", "1.5"}}).validate(), ConfigRangeError);
  CHECK_THROWS_AS(build_run_config({{"pin_steps", "0"}}).validate(), ConfigRangeError);
  CHECK_THROWS_AS(build_run_config({{"cutoff", "9"}}).validate(), ConfigRangeError);
  CHECK_NOTHROW(build_run_config({}).validate());
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0 / 3.0) == "0.333333333");
}

TEST_CASE("gain-curve command") {
  const RunConfig c = build_run_config(
      {{"preset", "paper-dashed"}, {"t", "0.99"}, {"pin_steps", "10"}});
  const auto rows = parse_csv(cmd_gain_curve(c));
  REQUIRE(rows.size() == 11);
  CHECK(rows[0][0] == "p_in");
  double best = 0.0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double ga = std::stod(rows[k][1]);
    const double go = std::stod(rows[k][2]);
    CHECK(std::abs(ga - go) <= 1e-8 * ga);
    best = std::max(best, std::stod(rows[k][4]));
  }
  CHECK(best > 0.823);
}

TEST_CASE("fringe and hom commands") {
  const auto fr = parse_csv(cmd_fringe(build_run_config({{"preset", "fig4"}})));
  REQUIRE(fr.size() == 17);
  CHECK(std::stod(fr[1][3]) == doctest::Approx(1.0));
  CHECK(std::stod(fr[1][5]) == doctest::Approx(1.0));
  CHECK_THROWS_AS(cmd_fringe(build_run_config({{"scenario", "fock-hpa"}})), ConfigRangeError);

  const auto hom = parse_csv(cmd_hom(build_run_config({{"mu2", "0.92"}})));
  REQUIRE(hom.size() == 2);
  CHECK(std::stod(hom[1][3]) == doctest::Approx(0.92));
  CHECK(std::stod(hom[1][4]) == doctest::Approx(0.92));
}

TEST_CASE("binary exit codes and output files") {
  const fs::path out = scratch("empty.csv");
  CHECK(run_cli("gain-curve --pin-steps 0 --out " + out.string()) == kExitValidation);
  CHECK_FALSE(fs::exists(out));
  CHECK(run_cli("gain-curve --t 1.7") == kExitValidation);
  CHECK(run_cli("gain-curve --t abc") == kExitParse);
  CHECK(run_cli("gain-curve --bogus 1") == kExitParse);
  CHECK(run_cli("frobnicate") == kExitParse);

  const fs::path cfg = scratch("bad.cfg");
  std::ofstream(cfg) << "unknown_key = 3\n";
  CHECK(run_cli("hom --config " + cfg.string()) == kExitParse);
}

TEST_CASE("estimate output is byte-identical across runs") {
  const fs::path a = scratch("a.csv");
  const fs::path b = scratch("b.csv");
  const std::string args =
      "estimate --scenario fock-hpa --pin-from 0.2 --pin-to 0.6 --pin-steps 3 "
      "--pulses 20000 --seed 17 --out ";
  REQUIRE(run_cli(args + a.string()) == kExitOk);
  REQUIRE(run_cli(args + b.string()) == kExitOk);
  const std::string text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(parse_csv(text).size() == 4);
}

TEST_CASE("config file with flag override") {
  const fs::path cfg = scratch("run.cfg");
  std::ofstream(cfg) << "# curve\nt = 0.7\npin_steps = 4\n";
  const fs::path out = scratch("curve.csv");
  REQUIRE(run_cli("gain-curve --config " + cfg.string() + " --pin-steps 2 --out " +
                  out.string()) == kExitOk);
  CHECK(parse_csv(slurp(out)).size() == 3);
}

}  // namespace
}  // namespace hqasim
