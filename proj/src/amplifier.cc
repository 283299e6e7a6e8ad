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

#include "hqasim/amplifier.h"

#include <algorithm>
#include <numbers>
#include <utility>

namespace hqasim {
namespace {

constexpr double kZeroHerald = 1e-30;

void check_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " outside [0,1]");
  }
}

std::vector<ModeLabel> registry(const std::vector<std::string>& paths) {
  std::vector<ModeLabel> modes;
  for (const auto& p : paths) {
    modes.push_back({p, Internal::kMatched});
    modes.push_back({p, Internal::kOrthogonal});
  }
  return modes;
}

/// Superposition of one photon over the given modes.
FockState single_photon(const std::vector<ModeLabel>& modes, int cutoff,
                        const std::vector<std::pair<ModeLabel, Complex>>& terms) {
  FockState s(modes, cutoff);
  FockState probe(modes, cutoff);
  for (const auto& [label, amp] : terms) {
    Occupation occ(modes.size(), 0);
    occ[probe.mode_index(label.path, label.internal)] = 1;
    s.add(occ, amp);
  }
  return s;
}

/// Product of states whose photons occupy disjoint modes.
FockState disjoint_product(const FockState& a, const FockState& b) {
  FockState out(a.modes(), a.cutoff());
  for (const auto& [oa, xa] : a.amplitudes()) {
    for (const auto& [ob, xb] : b.amplitudes()) {
      Occupation occ(oa.size());
      for (std::size_t k = 0; k < oa.size(); ++k) {
        if (oa[k] > 0 && ob[k] > 0) {
          throw std::logic_error("disjoint_product on overlapping modes");
        }
        occ[k] = static_cast<std::uint8_t>(oa[k] + ob[k]);
      }
      out.add(occ, xa * xb);
    }
  }
  return out;
}

FockState ancilla_photon(const std::vector<ModeLabel>& modes, int cutoff,
                         const std::string& path, double mu) {
  const double rest = std::sqrt(std::max(0.0, 1.0 - mu * mu));
  return single_photon(modes, cutoff,
                       {{{path, Internal::kMatched}, mu},
                        {{path, Internal::kOrthogonal}, rest}});
}

/// Enumerates presence/absence of each source; `options[k]` lists the
/// (weight, state, tag) alternatives of source k.
struct SourceOption {
  double weight;
  FockState state;
  std::string tag;
  bool is_input_photon;
};

std::vector<SourceBranch> enumerate_sources(
    const std::vector<ModeLabel>& modes, int cutoff,
    const std::vector<std::vector<SourceOption>>& options) {
  std::vector<SourceBranch> out{
      {1.0, FockState::vacuum(modes, cutoff), "", false}};
  for (const auto& alternatives : options) {
    std::vector<SourceBranch> next;
    for (const auto& b : out) {
      for (const auto& opt : alternatives) {
        const double w = b.weight * opt.weight;
        if (w <= 0.0) continue;
        std::string tag = b.tag.empty() ? opt.tag : b.tag + "," + opt.tag;
        next.push_back({w, disjoint_product(b.state, opt.state), std::move(tag),
                        b.input_present || opt.is_input_photon});
      }
    }
    out = std::move(next);
  }
  return out;
}

ClickPattern pattern(const std::vector<std::string>& all,
                     const std::vector<std::string>& clicking) {
  ClickPattern p;
  for (const auto& d : all) {
    const bool click = std::ranges::find(clicking, d) != clicking.end();
    p[d] = click ? ClickOutcome::kClick : ClickOutcome::kNoClick;
  }
  return p;
}

AmplifierSetup build_timebin_raw(const AmplifierParams& params,
                                 const QubitSpec& qubit) {
  params.validate();
  qubit.validate();
  AmplifierSetup setup;
  setup.scenario = Scenario::kTimeBinHqa;
  setup.qubit = qubit;
  setup.p_in = params.p_in;
  const auto modes =
      registry({"in_s", "anc_s", "out_s", "in_l", "anc_l", "out_l"});
  setup.circuit.modes = modes;
  // The ancilla of each rail enters through the `out` port so that the
  // transmitted share t reaches the output and 1 − t the BSM arm.
  setup.circuit.elements = {
      PhaseShift{qubit.delta_phi, "in_l"},
      BeamSplitter{params.t, "out_s", "anc_s"},
      BeamSplitter{params.t, "out_l", "anc_l"},
      BeamSplitter{0.5, "in_s", "anc_s"},
      BeamSplitter{0.5, "in_l", "anc_l"},
  };
  const DetectorSpec spec{params.eta, params.dark};
  setup.detectors = {{"bsm_c_s", "in_s", spec},
                     {"bsm_d_s", "anc_s", spec},
                     {"bsm_c_l", "in_l", spec},
                     {"bsm_d_l", "anc_l", spec}};
  const std::vector<std::string> names = {"bsm_c_s", "bsm_d_s", "bsm_c_l",
                                          "bsm_d_l"};
  setup.herald_classes = {
      {"same_port",
       {pattern(names, {"bsm_c_s", "bsm_c_l"}),
        pattern(names, {"bsm_d_s", "bsm_d_l"})},
       false},
      {"opposite_port",
       {pattern(names, {"bsm_c_s", "bsm_d_l"}),
        pattern(names, {"bsm_d_s", "bsm_c_l"})},
       false},
  };
  const int cut = params.cutoff;
  const FockState input = single_photon(
      modes, cut,
      {{{"in_s", Internal::kMatched}, qubit.alpha},
       {{"in_l", Internal::kMatched}, qubit.beta}});
  const FockState vac = FockState::vacuum(modes, cut);
  setup.sources = enumerate_sources(
      modes, cut,
      {{{params.p_in, input, "in=1", true}, {1.0 - params.p_in, vac, "in=0", false}},
       {{params.p_a, ancilla_photon(modes, cut, "out_s", params.mu), "anc_s=1", false},
        {1.0 - params.p_a, vac, "anc_s=0", false}},
       {{params.p_a, ancilla_photon(modes, cut, "out_l", params.mu), "anc_l=1", false},
        {1.0 - params.p_a, vac, "anc_l=0", false}}});
  setup.output_paths = {"out_s", "out_l"};
  return setup;
}

/// Which of the two raw classes needs the π correction, from an ideal
/// reference teleportation of (|s⟩ + |ℓ⟩)/√2.
const std::array<bool, 2>& class_corrections() {
  static const std::array<bool, 2> corrections = [] {
    AmplifierParams ideal;
    ideal.t = 0.5;
    ideal.p_in = 1.0;
    ideal.p_a = 1.0;
    ideal.eta = 1.0;
    ideal.mu = 1.0;
    ideal.dark = 0.0;
    const AmplifierSetup ref = build_timebin_raw(ideal, QubitSpec::time_bin(0.0));
    const HeraldedOutcome out = simulate(ideal, ref);
    std::array<bool, 2> c{};
    for (std::size_t k = 0; k < 2; ++k) c[k] = out.classes[k].fidelity_raw < 0.5;
    if (c[0] == c[1]) {
      throw std::logic_error("Bell classes are not related by a pi phase");
    }
    return c;
  }();
  return corrections;
}

Mat2 corrected(const Mat2& rho, bool pi_correction) {
  Mat2 out = rho;
  if (pi_correction) {
    out[0][1] = -out[0][1];
    out[1][0] = -out[1][0];
  }
  return out;
}

std::array<Complex, 2> target_of(const AmplifierSetup& setup) {
  if (setup.scenario == Scenario::kFockHpa) return {1.0, 0.0};
  return setup.qubit.target();
}

}  // namespace

std::string to_string(Scenario s) {
  return s == Scenario::kFockHpa ? "fock-hpa" : "timebin-hqa";
}

Scenario parse_scenario(const std::string& name) {
  if (name == "fock-hpa") return Scenario::kFockHpa;
  if (name == "timebin-hqa") return Scenario::kTimeBinHqa;
  throw std::invalid_argument("unknown scenario " + name);
}

void AmplifierParams::validate() const {
  check_unit(t, "t");
  check_unit(p_in, "p_in");
  check_unit(p_a, "p_a");
  check_unit(eta, "eta");
  check_unit(mu, "mu");
  if (!(dark >= 0.0 && dark < 1.0)) {
    throw std::invalid_argument("dark click probability outside [0,1)");
  }
  if (cutoff < 2 || cutoff > kPhotonBudget) {
    throw std::invalid_argument("cutoff must be in [2, 4]");
  }
}

QubitSpec QubitSpec::time_bin(double delta_phi) {
  QubitSpec q;
  q.delta_phi = delta_phi;
  return q;
}

void QubitSpec::validate() const {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12) {
    throw std::invalid_argument("qubit amplitudes are not normalized");
  }
}

std::array<Complex, 2> QubitSpec::target() const {
  return {alpha, beta * std::polar(1.0, delta_phi)};
}

AmplifierSetup build_fock_hpa_circuit(const AmplifierParams& params) {
  params.validate();
  AmplifierSetup setup;
  setup.scenario = Scenario::kFockHpa;
  setup.p_in = params.p_in;
  setup.qubit = {1.0, 0.0, 0.0};
  const auto modes = registry({"in", "anc", "out"});
  setup.circuit.modes = modes;
  setup.circuit.elements = {
      BeamSplitter{params.t, "out", "anc"},
      BeamSplitter{0.5, "in", "anc"},
  };
  const DetectorSpec spec{params.eta, params.dark};
  setup.detectors = {{"bsm_c", "in", spec}, {"bsm_d", "anc", spec}};
  const std::vector<std::string> names = {"bsm_c", "bsm_d"};
  setup.herald_classes = {
      {"herald", {pattern(names, {"bsm_c"}), pattern(names, {"bsm_d"})}, false}};
  const int cut = params.cutoff;
  const FockState vac = FockState::vacuum(modes, cut);
  setup.sources = enumerate_sources(
      modes, cut,
      {{{params.p_in, single_photon(modes, cut, {{{"in", Internal::kMatched}, 1.0}}),
         "in=1", true},
        {1.0 - params.p_in, vac, "in=0", false}},
       {{params.p_a, ancilla_photon(modes, cut, "out", params.mu), "anc=1", false},
        {1.0 - params.p_a, vac, "anc=0", false}}});
  setup.output_paths = {"out"};
  return setup;
}

AmplifierSetup build_timebin_hqa_circuit(const AmplifierParams& params,
                                         const QubitSpec& qubit) {
  AmplifierSetup setup = build_timebin_raw(params, qubit);
  const auto& corr = class_corrections();
  for (std::size_t k = 0; k < 2; ++k) {
    setup.herald_classes[k].pi_correction = corr[k];
    setup.herald_classes[k].name = corr[k] ? "psi_minus" : "psi_plus";
  }
  if (corr[0]) std::swap(setup.herald_classes[0], setup.herald_classes[1]);
  return setup;
}

AmplifierSetup build_setup(Scenario scenario, const AmplifierParams& params,
                           const QubitSpec& qubit) {
  return scenario == Scenario::kFockHpa ? build_fock_hpa_circuit(params)
                                        : build_timebin_hqa_circuit(params, qubit);
}

OutputAnalysis analyze_output(const Mixture& conditional,
                              const std::vector<std::string>& output_paths) {
  if (output_paths.empty() || output_paths.size() > 2) {
    throw std::invalid_argument("output register must have one or two rails");
  }
  OutputAnalysis out;
  for (const auto& b : conditional.branches()) {
    const FockState& s = b.state;
    std::vector<int> rail_of(s.n_modes(), -1);
    for (std::size_t r = 0; r < output_paths.size(); ++r) {
      for (auto k : s.path_modes(output_paths[r])) rail_of[k] = static_cast<int>(r);
    }
    if (std::ranges::find(rail_of, -1) != rail_of.end()) {
      throw std::invalid_argument("conditional state holds non-output modes");
    }
    // amplitude of the single photon per (internal index, rail)
    std::array<std::array<Complex, 2>, 2> single{};
    for (const auto& [occ, amp] : s.amplitudes()) {
      const int n = total_photons(occ);
      const double p = b.weight * std::norm(amp);
      if (n == 0) {
        out.vacuum_weight += p;
      } else if (n == 1) {
        out.single_weight += p;
        const auto k = static_cast<std::size_t>(
            std::ranges::find(occ, std::uint8_t{1}) - occ.begin());
        const auto in = static_cast<std::size_t>(s.modes()[k].internal);
        single[in][static_cast<std::size_t>(rail_of[k])] += amp;
      } else {
        out.multi_weight += p;
      }
    }
    for (const auto& v : single) {
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          out.qubit_density[r][c] += b.weight * v[r] * std::conj(v[c]);
        }
      }
    }
  }
  return out;
}

double qubit_fidelity(const Mat2& rho, const std::array<Complex, 2>& target,
                      bool pi_correction) {
  const Mat2 r = corrected(rho, pi_correction);
  const double tr = (r[0][0] + r[1][1]).real();
  if (!(tr > 0.0)) throw NumericalError("fidelity of an empty qubit sector");
  Complex f{};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) f += std::conj(target[a]) * r[a][b] * target[b];
  }
  return f.real() / tr;
}

HeraldedOutcome simulate(const AmplifierParams& params,
                         const AmplifierSetup& setup) {
  params.validate();
  const std::size_t n_classes = setup.herald_classes.size();
  std::vector<double> class_prob(n_classes, 0.0);
  std::vector<std::vector<Branch>> class_branches(n_classes);

  for (const auto& src : setup.sources) {
    const Mixture evolved =
        run_circuit(Mixture::pure(src.state, src.tag), setup.circuit);
    for (std::size_t c = 0; c < n_classes; ++c) {
      for (const auto& pat : setup.herald_classes[c].patterns) {
        const Measurement m = measure(evolved, setup.detectors, pat);
        if (m.probability <= 0.0) continue;
        const double w = src.weight * m.probability;
        class_prob[c] += w;
        for (const auto& b : m.conditional.branches()) {
          class_branches[c].push_back({w * b.weight, b.state, b.tag});
        }
      }
    }
  }

  HeraldedOutcome out;
  for (double p : class_prob) out.herald_prob += p;
  if (out.herald_prob <= kZeroHerald) {
    throw NumericalError("herald probability vanishes for this configuration");
  }
  const auto target = target_of(setup);
  for (std::size_t c = 0; c < n_classes; ++c) {
    const HeraldClass& hc = setup.herald_classes[c];
    ClassOutcome co;
    co.name = hc.name;
    co.pi_correction = hc.pi_correction;
    co.herald_prob = class_prob[c];
    if (class_prob[c] > kZeroHerald) {
      for (auto& b : class_branches[c]) b.weight /= class_prob[c];
      const OutputAnalysis a =
          analyze_output(Mixture(std::move(class_branches[c])), setup.output_paths);
      co.p_out = a.single_weight;
      co.density = a.qubit_density;
      if (a.single_weight > kZeroHerald) {
        co.fidelity_raw = qubit_fidelity(a.qubit_density, target, false);
        co.fidelity_corrected =
            qubit_fidelity(a.qubit_density, target, hc.pi_correction);
      }
      const double share = class_prob[c] / out.herald_prob;
      out.p_out += share * a.single_weight;
      out.vacuum_weight += share * a.vacuum_weight;
      out.multi_weight += share * a.multi_weight;
      const Mat2 fixed = corrected(a.qubit_density, hc.pi_correction);
      for (int r = 0; r < 2; ++r) {
        for (int k = 0; k < 2; ++k) {
          out.output_qubit_density[r][k] += share * fixed[r][k];
        }
      }
    }
    out.classes.push_back(std::move(co));
  }
  if (out.p_out > kZeroHerald) {
    out.fidelity_conditional =
        qubit_fidelity(out.output_qubit_density, target, false);
  }
  out.gain = setup.p_in > 0.0
                 ? out.p_out / setup.p_in
                 : gain_analytic(params.t, params.p_a, params.eta, 0.0);
  return out;
}

double gain_analytic(double t, double p_a, double eta, double p_in) {
  const double denom = p_a * (1.0 - t) * (1.0 - p_in * eta) + p_in;
  if (!(denom > 0.0)) throw NumericalError("gain undefined: zero denominator");
  return p_a * t / denom;
}

double gain_asymptote(double t) {
  if (!(t >= 0.0 && t < 1.0)) {
    throw NumericalError("asymptotic gain undefined for t outside [0,1)");
  }
  return t / (1.0 - t);
}

std::vector<double> phase_grid(int n) {
  if (n <= 0) throw std::invalid_argument("phase grid must be non-empty");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) g[k] = 2.0 * std::numbers::pi * k / n;
  return g;
}

double visibility(const std::vector<double>& rates) {
  if (rates.empty()) throw std::invalid_argument("no rates");
  const auto [lo, hi] = std::ranges::minmax_element(rates);
  if (*lo < 0.0) throw std::invalid_argument("negative rate");
  if (!(*hi > 0.0)) throw std::invalid_argument("all rates are zero");
  return (*hi - *lo) / (*hi + *lo);
}

double fidelity_from_visibility(double v) {
  check_unit(v, "visibility");
  return (1.0 + v) / 2.0;
}

namespace {

/// Rate of one Bell class at each phase for a single overlap value.
std::vector<double> class_rates(const AmplifierParams& params,
                                const std::vector<double>& phases,
                                const std::string& name) {
  const std::array<Complex, 2> analyzer = {1.0 / std::sqrt(2.0),
                                           1.0 / std::sqrt(2.0)};
  std::vector<double> rates;
  for (double phi : phases) {
    const AmplifierSetup setup =
        build_timebin_hqa_circuit(params, QubitSpec::time_bin(phi));
    const HeraldedOutcome o = simulate(params, setup);
    for (const auto& c : o.classes) {
      if (c.name != name) continue;
      Complex fire{};
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          fire += std::conj(analyzer[a]) * c.density[a][b] * analyzer[b];
        }
      }
      rates.push_back(c.herald_prob * fire.real());
    }
  }
  return rates;
}

}  // namespace

FringeScan fringe_scan(const AmplifierParams& params,
                       const std::vector<double>& phases,
                       const ClassOverlaps& overlaps) {
  if (phases.empty()) throw std::invalid_argument("phase grid must be non-empty");
  AmplifierParams plus = params;
  plus.mu = overlaps.mu_plus;
  AmplifierParams minus = params;
  minus.mu = overlaps.mu_minus;
  const auto rp = class_rates(plus, phases, "psi_plus");
  const auto rm = class_rates(minus, phases, "psi_minus");
  FringeScan scan;
  for (std::size_t k = 0; k < phases.size(); ++k) {
    scan.points.push_back({phases[k], rp[k], rm[k]});
  }
  scan.visibility_plus = visibility(rp);
  scan.visibility_minus = visibility(rm);
  return scan;
}

FringeScan fringe_scan(const AmplifierParams& params,
                       const std::vector<double>& phases) {
  return fringe_scan(params, phases, {params.mu, params.mu});
}

double calibrate_overlap(const AmplifierParams& params, double target_v,
                         bool psi_plus) {
  check_unit(target_v, "target visibility");
  const std::vector<double> extremes = {0.0, std::numbers::pi};
  const std::string name = psi_plus ? "psi_plus" : "psi_minus";
  auto vis = [&](double mu) {
    AmplifierParams p = params;
    p.mu = mu;
    return visibility(class_rates(p, extremes, name));
  };
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 64; ++it) {
    const double mid = 0.5 * (lo + hi);
    (vis(mid) < target_v ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

HomResult hom_coincidence(double mu) {
  check_unit(mu, "mu");
  return {(1.0 - mu * mu) / 2.0, mu * mu};
}

HomResult hom_coincidence_simulated(double mu) {
  check_unit(mu, "mu");
  const auto modes = registry({"a", "b"});
  const FockState first = single_photon(modes, kDefaultCutoff,
                                        {{{"a", Internal::kMatched}, 1.0}});
  const FockState second = ancilla_photon(modes, kDefaultCutoff, "b", mu);
  Mixture m = Mixture::pure(disjoint_product(first, second));
  m = apply_element(m, BeamSplitter{0.5, "a", "b"});
  const FockState& s = m.branches().front().state;
  const std::vector<std::size_t> all = {0, 1, 2, 3};
  double coincidence = 0.0;
  for (const auto& [occ, p] : occupation_marginal(s, all)) {
    if (occ[0] + occ[1] > 0 && occ[2] + occ[3] > 0) coincidence += p;
  }
  // Visibility relative to the fully distinguishable coincidence of 1/2.
  return {coincidence, 1.0 - coincidence / 0.5};
}

}  // namespace hqasim
