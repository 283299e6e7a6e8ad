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

// Pulse-by-pulse sampling of coincidence counts and the ratio estimators
// built on them.
//
// Per pulse: D1 heralds the input source with efficiency eta_herald. On a
// D1 pulse the source branch (input photon, ancillae) is drawn, D2 reads
// out whether the input photon reached the amplifier (calibration probe),
// the BSM click pattern and the output detector D4 are drawn jointly from
// the exact distribution computed by the detection model.

#ifndef HQASIM_MONTECARLO_H_
#define HQASIM_MONTECARLO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hqasim/amplifier.h"

namespace hqasim {

inline constexpr double kDefaultHeraldEfficiency = 0.86 * 0.70;

/// What the output detector D4 registers.
struct AnalyzerSetting {
  enum class Kind { kPresence, kProjection };
  Kind kind = Kind::kPresence;
  /// Projection analyzer: (|s⟩ + e^{iφ}|ℓ⟩)/√2.
  double phase = 0.0;
};

struct MonteCarloConfig {
  std::uint64_t n_pulses = 1'000'000;
  std::uint64_t seed = 1;
  double eta_herald = kDefaultHeraldEfficiency;
  AnalyzerSetting analyzer;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct CountsTable {
  std::uint64_t n_pulses = 0;
  std::uint64_t d1 = 0;
  std::uint64_t d1_d2 = 0;
  std::uint64_t three_fold = 0;
  std::uint64_t four_fold = 0;
  std::vector<std::string> class_names;
  std::vector<std::uint64_t> three_fold_by_class;
  std::vector<std::uint64_t> four_fold_by_class;

  CountsTable& operator+=(const CountsTable& other);
  bool operator==(const CountsTable&) const = default;
  /// four ≤ three ≤ D1 ≤ n, D1∧D2 ≤ D1, class counts sum to totals.
  bool nesting_ok() const;
};

struct EstimateWithError {
  double value = 0.0;
  double error = 0.0;
};

CountsTable sample_events(Scenario scenario, const AmplifierParams& params,
                          const QubitSpec& qubit, const MonteCarloConfig& config);

/// Ratio k / n of nested counts; Poisson errors on the disjoint bins k and
/// n − k propagated to first order. std::nullopt when n = 0.
std::optional<EstimateWithError> ratio_estimate(std::uint64_t k, std::uint64_t n);

std::optional<EstimateWithError> estimate_pin(const CountsTable& c);
std::optional<EstimateWithError> estimate_pout(const CountsTable& c);
/// P̂_out / P̂_in with relative errors added in quadrature.
std::optional<EstimateWithError> estimate_gain(const CountsTable& c);

/// ceil(base_pulses / P_in); throws std::invalid_argument for P_in <= 0.
std::uint64_t plan_measurement_time(double p_in, std::uint64_t base_pulses);

}  // namespace hqasim

#endif  // HQASIM_MONTECARLO_H_
