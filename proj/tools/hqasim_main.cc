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

// hqasim: command-line front end.
//
//   hqasim gain-curve --preset paper-dashed --t 0.99 --pin-steps 10
//   hqasim fringe --preset fig4 --vis-plus 0.98 --vis-minus 0.93
//   hqasim hom --mu2 0.92
//   hqasim estimate --config run.cfg --seed 3 --out counts.csv
//   hqasim selftest

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include "hqasim/amplifier.h"
#include "hqasim/commands.h"
#include "hqasim/run_config.h"

namespace {

using namespace hqasim;

// Flag name -> config key. Flags use dashes, keys use underscores.
const std::vector<std::pair<std::string, std::string>> kFlags = {
    {"scenario", "scenario"},     {"t", "t"},
    {"pa", "pa"},                 {"eta", "eta"},
    {"mu", "mu"},                 {"mu2", "mu2"},
    {"pin", "pin"},               {"dark", "dark"},
    {"cutoff", "cutoff"},         {"seed", "seed"},
    {"pulses", "pulses"},         {"eta-herald", "eta_herald"},
    {"mu-plus", "mu_plus"},       {"mu-minus", "mu_minus"},
    {"vis-plus", "vis_plus"},     {"vis-minus", "vis_minus"},
    {"pin-from", "pin_from"},     {"pin-to", "pin_to"},
    {"pin-steps", "pin_steps"},   {"phi-steps", "phi_steps"},
    {"mu-from", "mu_from"},       {"mu-to", "mu_to"},
    {"mu-steps", "mu_steps"},     {"out", "out"},
    {"preset", "preset"}};

struct CommandOptions {
  std::string config_path;
  std::map<std::string, std::string> flags;
};

void add_common(CLI::App* sub, CommandOptions& opts) {
  sub->add_option("--config", opts.config_path, "key=value config file");
  for (const auto& [flag, key] : kFlags) {
    sub->add_option("--" + flag, opts.flags[key], "overrides '" + key + "'");
  }
}

RunConfig resolve(const CLI::App* sub, const CommandOptions& opts) {
  KeyValues kv;
  if (!opts.config_path.empty()) kv = read_config_file(opts.config_path);
  for (const auto& [flag, key] : kFlags) {
    if (sub->count("--" + flag) > 0) kv.emplace_back(key, opts.flags.at(key));
  }
  return build_run_config(kv);
}

int emit(const std::string& csv, const std::string& out) {
  if (out.empty()) {
    std::cout << csv;
    return kExitOk;
  }
  std::ofstream f(out, std::ios::binary);
  f << csv;
  if (!f) {
    std::cerr << "error: cannot write " << out << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heralded photonic qubit amplifier simulator"};
  app.require_subcommand(1);

  using Runner = std::function<std::string(const RunConfig&)>;
  const std::vector<std::tuple<std::string, std::string, Runner>> table = {
      {"gain-curve", "gain and output probability versus P_in", cmd_gain_curve},
      {"fringe", "time-bin interference fringes per herald class", cmd_fringe},
      {"hom", "two-photon interference dip versus overlap", cmd_hom},
      {"estimate", "Monte Carlo counts and estimated gain", cmd_estimate}};

  std::map<std::string, CommandOptions> opts;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help, run] : table) {
    subs[name] = app.add_subcommand(name, help);
    add_common(subs[name], opts[name]);
  }
  bool quick = false;
  CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance checks");
  selftest->add_flag("--quick", quick, "skip the long Monte Carlo check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (selftest->parsed()) return cmd_selftest(std::cout, quick);
    for (const auto& [name, help, run] : table) {
      if (!subs[name]->parsed()) continue;
      const RunConfig config = resolve(subs[name], opts[name]);
      return emit(run(config), config.out);
    }
  } catch (const ConfigParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ConfigRangeError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitNumerical;
}
