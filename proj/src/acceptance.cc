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

#include "hqasim/acceptance.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "hqasim/amplifier.h"
#include "hqasim/detection.h"
#include "hqasim/montecarlo.h"

namespace hqasim {
namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

AmplifierParams make_params(double t, double p_a, double eta, double p_in,
                            double mu = 1.0) {
  AmplifierParams p;
  p.t = t;
  p.p_a = p_a;
  p.eta = eta;
  p.p_in = p_in;
  p.mu = mu;
  p.dark = 0.0;
  return p;
}

HeraldedOutcome oracle(Scenario s, const AmplifierParams& p,
                       const QubitSpec& q = {}) {
  return simulate(p, build_setup(s, p, q));
}

const ClassOutcome& find_class(const HeraldedOutcome& o, const std::string& name) {
  for (const auto& c : o.classes) {
    if (c.name == name) return c;
  }
  throw std::logic_error("missing herald class " + name);
}

constexpr std::array<double, 4> kGridT = {0.5, 0.7, 0.9, 0.99};
constexpr std::array<double, 5> kGridPa = {0.296, 0.5, 0.8, 0.9, 1.0};
constexpr std::array<double, 3> kGridEta = {0.5, 0.7, 1.0};
constexpr std::array<double, 6> kGridPin = {0.01, 0.1, 0.2, 0.47, 0.7, 1.0};
constexpr std::array<Scenario, 2> kScenarios = {Scenario::kFockHpa,
                                                Scenario::kTimeBinHqa};

template <class F>
void for_each_grid_point(F&& f) {
  for (double t : kGridT) {
    for (double pa : kGridPa) {
      for (double eta : kGridEta) {
        for (double pin : kGridPin) f(make_params(t, pa, eta, pin));
      }
    }
  }
}

FockState random_state(std::mt19937_64& rng, const std::vector<ModeLabel>& modes,
                       int max_total) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u;
  FockState s(modes);
  Occupation occ(modes.size(), 0);
  auto rec = [&](auto&& self, std::size_t k, int left) -> void {
    if (k == modes.size()) {
      if (u(rng) < 0.5) s.add(occ, Complex{g(rng), g(rng)});
      return;
    }
    for (int n = 0; n <= left; ++n) {
      occ[k] = static_cast<std::uint8_t>(n);
      self(self, k + 1, left - n);
    }
    occ[k] = 0;
  };
  rec(rec, 0, max_total);
  if (s.empty()) s.add(Occupation(modes.size(), 0), 1.0);
  return s.normalized();
}

}  // namespace

CriterionResult check_gain_formula_grid() {
  CriterionResult r{1, "gain formula equals exact oracle on the 360-point grid (both circuits)"};
  double worst = 0.0;
  int points = 0;
  for_each_grid_point([&](const AmplifierParams& p) {
    const double ga = gain_analytic(p.t, p.p_a, p.eta, p.p_in);
    for (Scenario s : kScenarios) {
      worst = std::max(worst, std::abs(oracle(s, p).gain - ga));
      ++points;
    }
  });
  r.passed = worst <= 1e-9 && points == 720;
  r.detail = std::to_string(points) + " evaluations, max |diff| = " + fmt(worst) +
             " (tol 1e-9)";
  return r;
}

CriterionResult check_maximum_gain() {
  CriterionResult r{2, "maximum gain t/(1-t) = 9 at t = 0.9"};
  const AmplifierParams p = make_params(0.9, 1.0, 1.0, 1e-6);
  double worst = 0.0;
  for (Scenario s : kScenarios) {
    worst = std::max(worst, std::abs(oracle(s, p).gain - 9.0));
  }
  const double asym = gain_asymptote(0.9);
  // 0.9 is not representable; t/(1-t) for the nearest double is 9 + 2 ulp.
  const double asym_err = std::abs(asym - 9.0);
  const double four_ulp = 4.0 * (std::nextafter(9.0, 10.0) - 9.0);
  r.passed = worst <= 1e-3 && asym_err <= four_ulp && gain_asymptote(0.5) == 1.0;
  std::ostringstream os;
  os.precision(17);
  os << "oracle max |G - 9| = " << worst << " (tol 1e-3); gain_asymptote(0.9) = "
     << asym << " (|diff| " << asym_err << " <= 4 ulp)";
  r.detail = os.str();
  return r;
}

CriterionResult check_output_probability_bound() {
  CriterionResult r{3, "p_out <= P_a t on the grid and P_out > 0.823 at t = 0.99"};
  double worst_excess = -std::numeric_limits<double>::infinity();
  for_each_grid_point([&](const AmplifierParams& p) {
    for (Scenario s : kScenarios) {
      worst_excess = std::max(worst_excess, oracle(s, p).p_out - p.p_a * p.t);
    }
  });
  double best = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const AmplifierParams p = make_params(0.99, 0.9, 0.7, k / 100.0);
    for (Scenario s : kScenarios) best = std::max(best, oracle(s, p).p_out);
  }
  r.passed = worst_excess <= 1e-12 && best > 0.823;
  r.detail = "max (p_out - P_a t) = " + fmt(worst_excess) +
             " (tol 1e-12); max P_out at t=0.99, P_a=0.9, eta=0.7: " + fmt(best);
  return r;
}

CriterionResult check_fidelity_reproduction() {
  CriterionResult r{4, "fringe visibilities 0.98/0.93 give fidelities 0.99/0.965"};
  const AmplifierParams base = make_params(0.7, 0.296, 0.7, 0.47);
  const auto grid = phase_grid(16);

  const double mu_plus = calibrate_overlap(base, 0.98, true);
  const double mu_minus = calibrate_overlap(base, 0.93, false);
  const FringeScan scan = fringe_scan(base, grid, {mu_plus, mu_minus});
  const double fp = fidelity_from_visibility(scan.visibility_plus);
  const double fm = fidelity_from_visibility(scan.visibility_minus);
  bool ok = std::abs(fp - (1 + scan.visibility_plus) / 2) <= 1e-9 &&
            std::abs(fm - (1 + scan.visibility_minus) / 2) <= 1e-9 &&
            std::abs(fp - 0.99) <= 1e-9 && std::abs(fm - 0.965) <= 1e-9;

  // Second route: the conditional state's fidelity at the calibrated overlap.
  AmplifierParams pp = base;
  pp.mu = mu_plus;
  AmplifierParams pm = base;
  pm.mu = mu_minus;
  const double route_p =
      find_class(oracle(Scenario::kTimeBinHqa, pp), "psi_plus").fidelity_corrected;
  const double route_m =
      find_class(oracle(Scenario::kTimeBinHqa, pm), "psi_minus").fidelity_corrected;
  ok = ok && std::abs(route_p - fp) <= 1e-6 && std::abs(route_m - fm) <= 1e-6;

  // Ideal overlap: unit fidelity for both classes after correction.
  double worst_ideal = 0.0;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 8; ++k) {
    const double th = u(rng) * std::numbers::pi;
    QubitSpec q{std::cos(th / 2), std::polar(std::sin(th / 2), 2 * std::numbers::pi * u(rng)),
                2 * std::numbers::pi * u(rng)};
    const HeraldedOutcome o = oracle(Scenario::kTimeBinHqa, base, q);
    for (const auto& c : o.classes) {
      worst_ideal = std::max(worst_ideal, std::abs(c.fidelity_corrected - 1.0));
    }
    worst_ideal = std::max(worst_ideal, std::abs(o.fidelity_conditional - 1.0));
  }
  ok = ok && worst_ideal <= 1e-9;

  const FringeScan ideal = fringe_scan(base, grid);
  double worst_sym = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    worst_sym = std::max(worst_sym, std::abs(ideal.points[k].rate_plus -
                                             ideal.points[(k + 8) % 16].rate_minus));
  }
  const auto peak = std::ranges::max_element(
      ideal.points, {}, &FringePoint::rate_plus);
  ok = ok && worst_sym <= 1e-9 && peak == ideal.points.begin();

  r.passed = ok;
  r.detail = "V+ = " + fmt(scan.visibility_plus) + " F+ = " + fmt(fp) +
             ", V- = " + fmt(scan.visibility_minus) + " F- = " + fmt(fm) +
             "; state fidelity " + fmt(route_p) + "/" + fmt(route_m) +
             "; ideal max |F-1| = " + fmt(worst_ideal) +
             "; max |R+(phi) - R-(phi+pi)| = " + fmt(worst_sym);
  return r;
}

CriterionResult check_hom_visibility() {
  CriterionResult r{5, "HOM visibility 0.92 and two-photon simulation of the dip"};
  const double v = hom_coincidence(std::sqrt(0.92)).visibility;
  double worst = 0.0;
  for (double mu : {0.0, 0.5, 0.959, 1.0}) {
    const double closed = (1.0 - mu * mu) / 2.0;
    worst = std::max(worst, std::abs(hom_coincidence_simulated(mu).coincidence - closed));
    worst = std::max(worst, std::abs(hom_coincidence(mu).coincidence - closed));
  }
  r.passed = std::abs(v - 0.92) <= 1e-12 && worst <= 1e-12;
  r.detail = "visibility(mu^2=0.92) = " + fmt(v) +
             ", max |coincidence - (1-mu^2)/2| = " + fmt(worst);
  return r;
}

CriterionResult check_detector_identity() {
  CriterionResult r{6, "threshold detection with efficiency equals loss then ideal detection"};
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<ModeLabel> modes = {
      {"a", Internal::kMatched}, {"a", Internal::kOrthogonal},
      {"b", Internal::kMatched}, {"b", Internal::kOrthogonal},
      {"c", Internal::kMatched}, {"c", Internal::kOrthogonal}};
  double worst_p = 0.0;
  double worst_rho = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Mixture m = Mixture::pure(random_state(rng, modes, 3));
    const double ea = u(rng);
    const double eb = u(rng);
    const std::vector<Detector> real = {{"A", "a", {ea, 0.0}}, {"B", "b", {eb, 0.0}}};
    const std::vector<Detector> ideal = {{"A", "a", {1.0, 0.0}}, {"B", "b", {1.0, 0.0}}};
    const Mixture lossy = apply_loss(apply_loss(m, "a", ea), "b", eb);
    for (const auto& pat : all_click_patterns(real)) {
      const Measurement x = measure(m, real, pat);
      const Measurement y = measure(lossy, ideal, pat);
      worst_p = std::max(worst_p, std::abs(x.probability - y.probability));
      if (x.probability > 0.0 && y.probability > 0.0) {
        worst_rho = std::max(worst_rho, density_distance(x.conditional, y.conditional));
      } else if (x.probability > 1e-12 || y.probability > 1e-12) {
        worst_rho = 1.0;
      }
    }
  }
  r.passed = worst_p <= 1e-12 && worst_rho <= 1e-12;
  r.detail = "100 random states: max |dP| = " + fmt(worst_p) +
             ", max |d rho| = " + fmt(worst_rho);
  return r;
}

CriterionResult check_monte_carlo_consistency() {
  CriterionResult r{7, "Monte Carlo gain estimates agree with the oracle"};
  const AmplifierParams p = make_params(0.9, 0.296, 0.7, 0.2);
  const double truth = oracle(Scenario::kFockHpa, p).gain;

  int within5 = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    MonteCarloConfig mc;
    mc.n_pulses = 1'000'000;
    mc.seed = seed;
    const auto g = estimate_gain(sample_events(Scenario::kFockHpa, p, {}, mc));
    if (g && std::abs(g->value - truth) <= 5.0 * g->error) ++within5;
  }
  int covered = 0;
  for (std::uint64_t seed = 1001; seed <= 1200; ++seed) {
    MonteCarloConfig mc;
    mc.n_pulses = 100'000;
    mc.seed = seed;
    const auto g = estimate_gain(sample_events(Scenario::kFockHpa, p, {}, mc));
    if (g && std::abs(g->value - truth) <= g->error) ++covered;
  }
  const double coverage = covered / 200.0;
  r.passed = within5 >= 29 && coverage >= 0.60 && coverage <= 0.75;
  r.detail = "within 5 sigma: " + std::to_string(within5) +
             "/30 (need >= 29); 1-sigma coverage " + fmt(coverage) +
             " over 200 seeds (need 0.60-0.75); oracle gain " + fmt(truth);
  return r;
}

CriterionResult check_declared_scope() {
  CriterionResult r{8, "declared non-reproducible items; theory curves reproduced instead"};
  // Gain curves for the solid and dashed presets.
  double worst = 0.0;
  for (double pa : {0.296, 0.9}) {
    for (double t : {0.7, 0.9, 0.99}) {
      for (int k = 1; k <= 20; ++k) {
        const AmplifierParams p = make_params(t, pa, 0.7, k / 20.0);
        const double ga = gain_analytic(t, pa, 0.7, p.p_in);
        worst = std::max(worst, std::abs(oracle(Scenario::kTimeBinHqa, p).gain - ga));
        if (t == 0.9) {
          worst = std::max(worst, std::abs(oracle(Scenario::kFockHpa, p).gain - ga));
        }
      }
    }
  }
  r.passed = worst <= 1e-9;
  r.detail =
      "absolute count rates, hardware efficiencies and measured data points "
      "are not reproduced; preset gain curves match the formula to " +
      fmt(worst);
  return r;
}

std::vector<CriterionResult> run_acceptance(std::ostream& log, bool quick) {
  const std::vector<std::function<CriterionResult()>> checks = {
      check_gain_formula_grid,      check_maximum_gain,
      check_output_probability_bound, check_fidelity_reproduction,
      check_hom_visibility,         check_detector_identity,
      check_monte_carlo_consistency, check_declared_scope};
  std::vector<CriterionResult> out;
  for (const auto& check : checks) {
    if (quick && out.size() == 6) {
      log << "[SKIP] criterion 7: Monte Carlo consistency (quick mode)\n";
      out.push_back({7, "Monte Carlo consistency", true, "skipped", 0.0});
      continue;
    }
    const auto start = Clock::now();
    CriterionResult r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r.id = static_cast<int>(out.size()) + 1;
      r.name = "criterion raised an exception";
      r.detail = e.what();
      r.passed = false;
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (r.id == 1 && r.seconds > 60.0) {
      r.passed = false;
      r.detail += "; runtime over 60 s";
    }
    if (r.id == 7 && r.seconds > 300.0) {
      r.passed = false;
      r.detail += "; runtime over 5 min";
    }
    log << (r.passed ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": "
        << r.name << " | " << r.detail << " (" << fmt(r.seconds) << " s)\n";
    log.flush();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace hqasim
