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

#include "hqasim/run_config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

namespace hqasim {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ConfigParseError("bad number for " + key + ": '" + v + "'");
  }
  return out;
}

template <class Int>
Int to_int(const std::string& key, const std::string& v) {
  Int out = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigParseError("bad integer for " + key + ": '" + v + "'");
  }
  return out;
}

void in_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ConfigRangeError(std::string(what) + " must lie in [0,1]");
  }
}

void apply(RunConfig& c, const std::string& key, const std::string& v) {
  auto grid = [&c]() -> Grid& {
    if (!c.mu_grid) c.mu_grid = Grid{0.0, 1.0, 11};
    return *c.mu_grid;
  };
  if (key == "scenario") {
    try {
      c.scenario = parse_scenario(v);
    } catch (const std::invalid_argument& e) {
      throw ConfigParseError(e.what());
    }
  } else if (key == "t") {
    c.params.t = to_double(key, v);
  } else if (key == "pa") {
    c.params.p_a = to_double(key, v);
  } else if (key == "eta") {
    c.params.eta = to_double(key, v);
  } else if (key == "mu") {
    c.params.mu = to_double(key, v);
  } else if (key == "mu2") {
    const double m2 = to_double(key, v);
    in_unit(m2, "mu2");
    c.params.mu = std::sqrt(m2);
  } else if (key == "pin") {
    c.params.p_in = to_double(key, v);
  } else if (key == "dark") {
    c.params.dark = to_double(key, v);
  } else if (key == "cutoff") {
    c.params.cutoff = to_int<int>(key, v);
  } else if (key == "seed") {
    c.seed = to_int<std::uint64_t>(key, v);
  } else if (key == "pulses") {
    c.pulses = to_int<std::uint64_t>(key, v);
  } else if (key == "eta_herald") {
    c.eta_herald = to_double(key, v);
  } else if (key == "mu_plus") {
    c.mu_plus = to_double(key, v);
  } else if (key == "mu_minus") {
    c.mu_minus = to_double(key, v);
  } else if (key == "vis_plus") {
    c.target_vis_plus = to_double(key, v);
  } else if (key == "vis_minus") {
    c.target_vis_minus = to_double(key, v);
  } else if (key == "pin_from") {
    c.pin_grid.from = to_double(key, v);
  } else if (key == "pin_to") {
    c.pin_grid.to = to_double(key, v);
  } else if (key == "pin_steps") {
    c.pin_grid.steps = to_int<int>(key, v);
  } else if (key == "phi_steps") {
    c.phi_steps = to_int<int>(key, v);
  } else if (key == "mu_from") {
    grid().from = to_double(key, v);
  } else if (key == "mu_to") {
    grid().to = to_double(key, v);
  } else if (key == "mu_steps") {
    grid().steps = to_int<int>(key, v);
  } else if (key == "out") {
    c.out = v;
  } else if (key == "preset") {
    c.preset = v;
  } else {
    throw ConfigParseError("unknown key '" + key + "'");
  }
}

}  // namespace

std::vector<double> Grid::values() const {
  if (steps <= 0) throw ConfigRangeError("grid must have at least one point");
  std::vector<double> v;
  for (int k = 0; k < steps; ++k) {
    v.push_back(steps == 1 ? from : from + (to - from) * k / (steps - 1));
  }
  return v;
}

void RunConfig::validate() const {
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigRangeError(e.what());
  }
  if (pin_grid.steps <= 0) throw ConfigRangeError("P_in grid is empty");
  in_unit(pin_grid.from, "pin_from");
  in_unit(pin_grid.to, "pin_to");
  if (pin_grid.to < pin_grid.from) throw ConfigRangeError("pin_to < pin_from");
  if (phi_steps <= 0) throw ConfigRangeError("phase grid is empty");
  if (mu_grid) {
    if (mu_grid->steps <= 0) throw ConfigRangeError("mu grid is empty");
    in_unit(mu_grid->from, "mu_from");
    in_unit(mu_grid->to, "mu_to");
  }
  if (mu_plus) in_unit(*mu_plus, "mu_plus");
  if (mu_minus) in_unit(*mu_minus, "mu_minus");
  if (target_vis_plus) in_unit(*target_vis_plus, "vis_plus");
  if (target_vis_minus) in_unit(*target_vis_minus, "vis_minus");
  if (pulses == 0) throw ConfigRangeError("pulses must be positive");
  in_unit(eta_herald, "eta_herald");
}

KeyValues parse_key_values(std::istream& in) {
  KeyValues out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigParseError("line " + std::to_string(lineno) +
                             ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigParseError("line " + std::to_string(lineno) + ": empty key");
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigParseError("cannot read config file " + path);
  return parse_key_values(in);
}

KeyValues preset_values(const std::string& name) {
  // Solid preset: ancilla heralding efficiency 0.80 times the
  // BSM-path transmission 0.37.
  if (name == "paper-solid") return {{"pa", "0.296"}, {"eta", "0.7"}};
  if (name == "paper-dashed") return {{"pa", "0.9"}, {"eta", "0.7"}};
  if (name == "fig4") {
    return {{"scenario", "timebin-hqa"}, {"t", "0.7"}, {"pin", "0.47"},
            {"pa", "0.296"}, {"eta", "0.7"}};
  }
  if (name == "ideal") return {{"pa", "1"}, {"eta", "1"}, {"mu", "1"}, {"dark", "0"}};
  throw ConfigParseError("unknown preset '" + name + "'");
}

RunConfig build_run_config(const KeyValues& values) {
  RunConfig c;
  std::string preset;
  for (const auto& [k, v] : values) {
    if (k == "preset") preset = v;
  }
  if (!preset.empty()) {
    for (const auto& [k, v] : preset_values(preset)) apply(c, k, v);
    c.preset = preset;
  }
  for (const auto& [k, v] : values) {
    if (k != "preset") apply(c, k, v);
  }
  return c;
}

}  // namespace hqasim
