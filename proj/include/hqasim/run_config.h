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

#ifndef HQASIM_RUN_CONFIG_H_
#define HQASIM_RUN_CONFIG_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hqasim/amplifier.h"
#include "hqasim/montecarlo.h"

namespace hqasim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitNumerical = 4;

/// Malformed input: unreadable file, bad line, unknown key, bad number.
class ConfigParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input with values out of range or an empty grid.
class ConfigRangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

struct Grid {
  double from = 0.0;
  double to = 1.0;
  int steps = 1;

  /// `steps` evenly spaced values from `from` to `to` inclusive.
  std::vector<double> values() const;
};

struct RunConfig {
  std::string preset;
  Scenario scenario = Scenario::kTimeBinHqa;
  AmplifierParams params;
  std::optional<double> mu_plus;
  std::optional<double> mu_minus;
  std::optional<double> target_vis_plus;
  std::optional<double> target_vis_minus;
  Grid pin_grid{0.1, 1.0, 10};
  int phi_steps = 16;
  std::optional<Grid> mu_grid;
  std::uint64_t pulses = 100'000;
  std::uint64_t seed = 1;
  double eta_herald = kDefaultHeraldEfficiency;
  std::string out;

  void validate() const;
};

/// Flat `key = value` lines; '#' starts a comment.
KeyValues parse_key_values(std::istream& in);
KeyValues read_config_file(const std::string& path);

/// Applies the preset first, then every other key in order (later wins).
RunConfig build_run_config(const KeyValues& values);

/// Named parameter sets; returns the (key, value) overrides of a preset.
KeyValues preset_values(const std::string& name);

}  // namespace hqasim

#endif  // HQASIM_RUN_CONFIG_H_
