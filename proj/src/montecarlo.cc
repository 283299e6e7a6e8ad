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

#include "hqasim/montecarlo.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace hqasim {
namespace {

constexpr std::uint64_t kBlockPulses = 1 << 16;

struct Outcome {
  double cumulative = 0.0;
  bool input_present = false;
  int herald_class = -1;  // -1: pattern outside every herald class
  bool fires = false;
};

double analyzer_fire_probability(const Mixture& conditional,
                                 const AmplifierSetup& setup,
                                 const AnalyzerSetting& analyzer) {
  const OutputAnalysis a = analyze_output(conditional, setup.output_paths);
  if (analyzer.kind == AnalyzerSetting::Kind::kPresence) {
    return a.single_weight + a.multi_weight;
  }
  if (setup.output_paths.size() != 2) {
    throw std::invalid_argument("projection analyzer needs a two-rail output");
  }
  // Acts on the single-photon sector.
  const std::array<Complex, 2> v = {1.0 / std::sqrt(2.0),
                                    std::polar(1.0 / std::sqrt(2.0), analyzer.phase)};
  Complex fire{};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) fire += std::conj(v[r]) * a.qubit_density[r][c] * v[c];
  }
  return std::clamp(fire.real(), 0.0, 1.0);
}

int class_of(const AmplifierSetup& setup, const ClickPattern& pattern) {
  for (std::size_t c = 0; c < setup.herald_classes.size(); ++c) {
    for (const auto& p : setup.herald_classes[c].patterns) {
      if (p == pattern) return static_cast<int>(c);
    }
  }
  return -1;
}

/// Joint distribution of (source branch, herald class, D4) for a D1 pulse.
std::vector<Outcome> outcome_table(const AmplifierSetup& setup,
                                   const AnalyzerSetting& analyzer) {
  std::vector<Outcome> table;
  double cum = 0.0;
  const auto patterns = all_click_patterns(setup.detectors);
  for (const auto& src : setup.sources) {
    const Mixture evolved =
        run_circuit(Mixture::pure(src.state, src.tag), setup.circuit);
    double unheralded = 0.0;
    for (const auto& pat : patterns) {
      const Measurement m = measure(evolved, setup.detectors, pat);
      if (m.probability <= 0.0) continue;
      const int cls = class_of(setup, pat);
      const double w = src.weight * m.probability;
      if (cls < 0) {
        unheralded += w;
        continue;
      }
      const double fire = analyzer_fire_probability(m.conditional, setup, analyzer);
      for (bool fires : {true, false}) {
        const double p = w * (fires ? fire : 1.0 - fire);
        if (p <= 0.0) continue;
        cum += p;
        table.push_back({cum, src.input_present, cls, fires});
      }
    }
    if (unheralded > 0.0) {
      cum += unheralded;
      table.push_back({cum, src.input_present, -1, false});
    }
  }
  return table;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

CountsTable empty_counts(const AmplifierSetup& setup) {
  CountsTable c;
  for (const auto& hc : setup.herald_classes) c.class_names.push_back(hc.name);
  c.three_fold_by_class.assign(setup.herald_classes.size(), 0);
  c.four_fold_by_class.assign(setup.herald_classes.size(), 0);
  return c;
}

CountsTable sample_block(const std::vector<Outcome>& table,
                         const CountsTable& prototype, double eta_herald,
                         std::uint64_t seed, std::uint64_t block,
                         std::uint64_t pulses) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block),
                    static_cast<std::uint32_t>(block >> 32)};
  std::mt19937_64 rng(seq);
  CountsTable c = prototype;
  c.n_pulses = pulses;
  const double total = table.empty() ? 0.0 : table.back().cumulative;
  for (std::uint64_t k = 0; k < pulses; ++k) {
    const double herald = uniform01(rng);
    const double draw = uniform01(rng) * total;
    if (herald >= eta_herald || table.empty()) continue;
    ++c.d1;
    auto it = std::ranges::upper_bound(table, draw, {}, &Outcome::cumulative);
    if (it == table.end()) --it;
    if (it->input_present) ++c.d1_d2;
    if (it->herald_class < 0) continue;
    ++c.three_fold;
    ++c.three_fold_by_class[static_cast<std::size_t>(it->herald_class)];
    if (it->fires) {
      ++c.four_fold;
      ++c.four_fold_by_class[static_cast<std::size_t>(it->herald_class)];
    }
  }
  return c;
}

}  // namespace

CountsTable& CountsTable::operator+=(const CountsTable& other) {
  n_pulses += other.n_pulses;
  d1 += other.d1;
  d1_d2 += other.d1_d2;
  three_fold += other.three_fold;
  four_fold += other.four_fold;
  if (class_names.empty()) {
    class_names = other.class_names;
    three_fold_by_class.assign(other.three_fold_by_class.size(), 0);
    four_fold_by_class.assign(other.four_fold_by_class.size(), 0);
  }
  if (other.three_fold_by_class.size() != three_fold_by_class.size()) {
    throw std::invalid_argument("merging counts with different class tables");
  }
  for (std::size_t k = 0; k < three_fold_by_class.size(); ++k) {
    three_fold_by_class[k] += other.three_fold_by_class[k];
    four_fold_by_class[k] += other.four_fold_by_class[k];
  }
  return *this;
}

bool CountsTable::nesting_ok() const {
  std::uint64_t t3 = 0;
  std::uint64_t t4 = 0;
  for (std::size_t k = 0; k < three_fold_by_class.size(); ++k) {
    if (four_fold_by_class[k] > three_fold_by_class[k]) return false;
    t3 += three_fold_by_class[k];
    t4 += four_fold_by_class[k];
  }
  return four_fold <= three_fold && three_fold <= d1 && d1_d2 <= d1 &&
         d1 <= n_pulses && t3 == three_fold && t4 == four_fold;
}

CountsTable sample_events(Scenario scenario, const AmplifierParams& params,
                          const QubitSpec& qubit, const MonteCarloConfig& config) {
  if (config.n_pulses == 0) throw std::invalid_argument("n_pulses must be > 0");
  if (!(config.eta_herald >= 0.0 && config.eta_herald <= 1.0)) {
    throw std::invalid_argument("eta_herald outside [0,1]");
  }
  const AmplifierSetup setup = build_setup(scenario, params, qubit);
  const std::vector<Outcome> table = outcome_table(setup, config.analyzer);
  const CountsTable prototype = empty_counts(setup);

  const std::uint64_t n_blocks = (config.n_pulses + kBlockPulses - 1) / kBlockPulses;
  std::vector<CountsTable> results(n_blocks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t b = next++; b < n_blocks; b = next++) {
      const std::uint64_t begin = b * kBlockPulses;
      const std::uint64_t pulses = std::min(kBlockPulses, config.n_pulses - begin);
      results[b] = sample_block(table, prototype, config.eta_herald, config.seed,
                                b, pulses);
    }
  };
  unsigned threads = config.threads != 0
                         ? config.threads
                         : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_blocks));
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
  }
  CountsTable total = prototype;
  for (const auto& r : results) total += r;
  return total;
}

std::optional<EstimateWithError> ratio_estimate(std::uint64_t k, std::uint64_t n) {
  if (n == 0) return std::nullopt;
  if (k > n) throw std::invalid_argument("numerator exceeds denominator");
  const double a = static_cast<double>(k);
  const double b = static_cast<double>(n - k);
  const double sum = a + b;
  // r = a / (a + b), var(a) = a, var(b) = b.
  return EstimateWithError{a / sum, std::sqrt(a * b / (sum * sum * sum))};
}

std::optional<EstimateWithError> estimate_pin(const CountsTable& c) {
  return ratio_estimate(c.d1_d2, c.d1);
}

std::optional<EstimateWithError> estimate_pout(const CountsTable& c) {
  return ratio_estimate(c.four_fold, c.three_fold);
}

std::optional<EstimateWithError> estimate_gain(const CountsTable& c) {
  const auto pin = estimate_pin(c);
  const auto pout = estimate_pout(c);
  if (!pin || !pout || pin->value <= 0.0) return std::nullopt;
  const double g = pout->value / pin->value;
  const double rel_in = pin->error / pin->value;
  const double rel_out = pout->value > 0.0 ? pout->error / pout->value : 0.0;
  double err = g * std::sqrt(rel_in * rel_in + rel_out * rel_out);
  if (pout->value == 0.0) {
    // First-order propagation degenerates at zero; keep the P_out error.
    err = pout->error / pin->value;
  }
  return EstimateWithError{g, err};
}

std::uint64_t plan_measurement_time(double p_in, std::uint64_t base_pulses) {
  if (!(p_in > 0.0 && p_in <= 1.0)) {
    throw std::invalid_argument("P_in must be in (0, 1] to plan a measurement");
  }
  // The relative slack absorbs representation error in p_in (e.g. 0.1).
  const double exact = static_cast<double>(base_pulses) / p_in;
  return static_cast<std::uint64_t>(std::ceil(exact * (1.0 - 1e-12)));
}

}  // namespace hqasim
