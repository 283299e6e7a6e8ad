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

// Heralded amplifier scenarios: circuit builders, the exact branch-enumeration
// oracle, the closed-form gain and the fringe/fidelity analysis.

#ifndef HQASIM_AMPLIFIER_H_
#define HQASIM_AMPLIFIER_H_

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hqasim/detection.h"
#include "hqasim/elements.h"
#include "hqasim/fock_state.h"

namespace hqasim {

/// Raised when a configuration cannot produce a herald or a ratio is 0/0.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Scenario { kFockHpa, kTimeBinHqa };

std::string to_string(Scenario s);
Scenario parse_scenario(const std::string& name);

struct AmplifierParams {
  double t = 0.9;       // unbalanced splitter transmission
  double p_in = 0.5;    // probability the channel delivers the input photon
  double p_a = 0.9;     // probability each ancilla photon is present
  double eta = 0.7;     // BSM detector efficiency
  double mu = 1.0;      // ancilla amplitude on the input photon's internal mode
  double dark = 0.0;    // per-pulse dark click probability of BSM detectors
  int cutoff = kDefaultCutoff;

  /// Throws std::invalid_argument on any out-of-range field.
  void validate() const;
};

/// Input qubit α|s⟩ + β e^{iΔφ}|ℓ⟩; the phase is applied by a phase shifter
/// on the ℓ input rail.
struct QubitSpec {
  Complex alpha = 1.0 / std::sqrt(2.0);
  Complex beta = 1.0 / std::sqrt(2.0);
  double delta_phi = 0.0;

  static QubitSpec time_bin(double delta_phi);
  void validate() const;
  /// {α, β e^{iΔφ}}.
  std::array<Complex, 2> target() const;
};

struct HeraldClass {
  std::string name;
  std::vector<ClickPattern> patterns;
  /// True when the π phase on the ℓ rail is needed to recover the input.
  bool pi_correction = false;
};

struct SourceBranch {
  double weight = 0.0;
  FockState state;
  std::string tag;
  bool input_present = false;
};

struct AmplifierSetup {
  Scenario scenario = Scenario::kFockHpa;
  Circuit circuit;
  std::vector<Detector> detectors;
  std::vector<HeraldClass> herald_classes;
  std::vector<SourceBranch> sources;
  /// Output rails in qubit order ({out} or {out_s, out_l}).
  std::vector<std::string> output_paths;
  QubitSpec qubit;
  double p_in = 0.0;
};

/// Single-rail layout: input photon and one ancilla; herald = exactly one click
/// among the two BSM detectors.
AmplifierSetup build_fock_hpa_circuit(const AmplifierParams& params);

/// Two rails (s, ℓ), each wired like the single-photon amplifier, with a
/// two-click Bell-state herald (one click per rail) split into Ψ⁺ and Ψ⁻.
AmplifierSetup build_timebin_hqa_circuit(const AmplifierParams& params,
                                         const QubitSpec& qubit);

AmplifierSetup build_setup(Scenario scenario, const AmplifierParams& params,
                           const QubitSpec& qubit = {});

/// Photon-number statistics and single-photon qubit of an output mixture.
struct OutputAnalysis {
  double vacuum_weight = 0.0;
  double single_weight = 0.0;
  double multi_weight = 0.0;
  /// Single-photon sector over the output rails, internal modes traced out.
  /// Trace equals single_weight.
  Mat2 qubit_density{};
};

OutputAnalysis analyze_output(const Mixture& conditional,
                              const std::vector<std::string>& output_paths);

struct ClassOutcome {
  std::string name;
  double herald_prob = 0.0;
  double p_out = 0.0;
  Mat2 density{};  // before correction, trace = p_out
  double fidelity_raw = 0.0;
  double fidelity_corrected = 0.0;
  bool pi_correction = false;
};

struct HeraldedOutcome {
  double herald_prob = 0.0;
  double p_out = 0.0;
  double gain = 0.0;
  double vacuum_weight = 0.0;
  double multi_weight = 0.0;
  /// Corrected output qubit (alpha|e> + beta|l> form), trace = p_out.
  Mat2 output_qubit_density{};
  double fidelity_conditional = 0.0;
  std::vector<ClassOutcome> classes;
};

/// Exact enumeration over source branches, the circuit and all herald
/// patterns. Throws NumericalError when the herald probability vanishes.
HeraldedOutcome simulate(const AmplifierParams& params,
                         const AmplifierSetup& setup);

/// P_a t / (P_a (1−t)(1 − P_in η) + P_in). Throws NumericalError when the
/// denominator vanishes.
double gain_analytic(double t, double p_a, double eta, double p_in);
/// t / (1 − t); throws NumericalError at t = 1.
double gain_asymptote(double t);

/// Fidelity of ρ (any trace > 0) to the pure qubit `target`, optionally after
/// the π phase on the second rail.
double qubit_fidelity(const Mat2& rho, const std::array<Complex, 2>& target,
                      bool pi_correction);

struct FringePoint {
  double delta_phi = 0.0;
  double rate_plus = 0.0;
  double rate_minus = 0.0;
};

struct FringeScan {
  std::vector<FringePoint> points;
  double visibility_plus = 0.0;
  double visibility_minus = 0.0;
};

/// Per-class ancilla overlaps for the fringe scan.
struct ClassOverlaps {
  double mu_plus = 1.0;
  double mu_minus = 1.0;
};

/// Four-fold rates R±(Δφ) = herald_prob(±) × P(analyzer fires | ±) with the
/// analyzer projecting on the Δφ = 0 input qubit.
FringeScan fringe_scan(const AmplifierParams& params,
                       const std::vector<double>& phases,
                       const ClassOverlaps& overlaps);
FringeScan fringe_scan(const AmplifierParams& params,
                       const std::vector<double>& phases);

/// n phases evenly spaced over [0, 2π).
std::vector<double> phase_grid(int n);

/// (max − min) / (max + min); throws std::invalid_argument on all-zero or
/// negative rates.
double visibility(const std::vector<double>& rates);
double fidelity_from_visibility(double v);

/// Smallest μ whose simulated Ψ-class fringe visibility reaches `target_v`.
double calibrate_overlap(const AmplifierParams& params, double target_v,
                         bool psi_plus);

struct HomResult {
  double coincidence = 0.0;
  double visibility = 0.0;
};

/// Closed form: coincidence (1 − μ²)/2, visibility μ².
HomResult hom_coincidence(double mu);
/// Two-photon Fock simulation of the same 50/50 experiment.
HomResult hom_coincidence_simulated(double mu);

}  // namespace hqasim

#endif  // HQASIM_AMPLIFIER_H_
