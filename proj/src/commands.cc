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

#include "hqasim/commands.h"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>

#include "hqasim/acceptance.h"

namespace hqasim {
namespace {

class CsvWriter {
 public:
  explicit CsvWriter(std::string header) : text_(std::move(header) + "\n") {}

  CsvWriter& cell(double v) { return raw(format_number(v)); }
  CsvWriter& cell(std::uint64_t v) { return raw(std::to_string(v)); }
  void end_row() {
    text_ += '\n';
    first_ = true;
  }
  std::string str() const { return text_; }

 private:
  CsvWriter& raw(const std::string& s) {
    if (!first_) text_ += ',';
    text_ += s;
    first_ = false;
    return *this;
  }

  std::string text_;
  bool first_ = true;
};

double resolve_overlap(const RunConfig& c, const std::optional<double>& mu,
                       const std::optional<double>& target, bool psi_plus) {
  if (mu) return *mu;
  if (target) return calibrate_overlap(c.params, *target, psi_plus);
  return c.params.mu;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0";
  std::array<char, 64> buf{};
  auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), v,
                    std::chars_format::general, 9);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), ptr);
}

std::string cmd_gain_curve(const RunConfig& config) {
  config.validate();
  CsvWriter csv("p_in,gain_analytic,gain_oracle,p_out_analytic,p_out_oracle");
  for (double p_in : config.pin_grid.values()) {
    AmplifierParams p = config.params;
    p.p_in = p_in;
    const double ga = gain_analytic(p.t, p.p_a, p.eta, p_in);
    const HeraldedOutcome o = simulate(p, build_setup(config.scenario, p));
    csv.cell(p_in).cell(ga).cell(o.gain).cell(ga * p_in).cell(o.p_out);
    csv.end_row();
  }
  return csv.str();
}

std::string cmd_fringe(const RunConfig& config) {
  config.validate();
  if (config.scenario != Scenario::kTimeBinHqa) {
    throw ConfigRangeError("fringe needs the timebin-hqa scenario");
  }
  const ClassOverlaps overlaps{
      resolve_overlap(config, config.mu_plus, config.target_vis_plus, true),
      resolve_overlap(config, config.mu_minus, config.target_vis_minus, false)};
  const FringeScan scan =
      fringe_scan(config.params, phase_grid(config.phi_steps), overlaps);
  const double fp = fidelity_from_visibility(scan.visibility_plus);
  const double fm = fidelity_from_visibility(scan.visibility_minus);
  CsvWriter csv(
      "delta_phi,rate_psi_plus,rate_psi_minus,visibility_plus,visibility_minus,"
      "fidelity_plus,fidelity_minus");
  for (const auto& pt : scan.points) {
    csv.cell(pt.delta_phi).cell(pt.rate_plus).cell(pt.rate_minus);
    csv.cell(scan.visibility_plus).cell(scan.visibility_minus).cell(fp).cell(fm);
    csv.end_row();
  }
  return csv.str();
}

std::string cmd_hom(const RunConfig& config) {
  config.validate();
  const std::vector<double> mus =
      config.mu_grid ? config.mu_grid->values() : std::vector<double>{config.params.mu};
  CsvWriter csv(
      "mu,coincidence_closed_form,coincidence_simulated,visibility_closed_form,"
      "visibility_simulated");
  for (double mu : mus) {
    const HomResult closed = hom_coincidence(mu);
    const HomResult sim = hom_coincidence_simulated(mu);
    csv.cell(mu).cell(closed.coincidence).cell(sim.coincidence);
    csv.cell(closed.visibility).cell(sim.visibility);
    csv.end_row();
  }
  return csv.str();
}

std::string cmd_estimate(const RunConfig& config) {
  config.validate();
  const std::vector<double> grid = config.pin_grid.values();
  for (double p_in : grid) {
    if (p_in <= 0.0) throw ConfigRangeError("estimate needs P_in > 0 on the grid");
  }
  CsvWriter csv(
      "p_in,pulses,d1,d1_d2,three_fold,four_fold,p_in_hat,p_in_err,p_out_hat,"
      "p_out_err,gain_hat,gain_err,gain_oracle");
  const double nan = std::nan("");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    AmplifierParams p = config.params;
    p.p_in = grid[k];
    MonteCarloConfig mc;
    mc.n_pulses = plan_measurement_time(p.p_in, config.pulses);
    mc.seed = config.seed + k;
    mc.eta_herald = config.eta_herald;
    const CountsTable c = sample_events(config.scenario, p, QubitSpec{}, mc);
    const auto pin = estimate_pin(c);
    const auto pout = estimate_pout(c);
    const auto gain = estimate_gain(c);
    const HeraldedOutcome o = simulate(p, build_setup(config.scenario, p));
    csv.cell(p.p_in).cell(c.n_pulses).cell(c.d1).cell(c.d1_d2);
    csv.cell(c.three_fold).cell(c.four_fold);
    csv.cell(pin ? pin->value : nan).cell(pin ? pin->error : nan);
    csv.cell(pout ? pout->value : nan).cell(pout ? pout->error : nan);
    csv.cell(gain ? gain->value : nan).cell(gain ? gain->error : nan);
    csv.cell(o.gain);
    csv.end_row();
  }
  return csv.str();
}

int cmd_selftest(std::ostream& log, bool quick) {
  const auto results = run_acceptance(log, quick);
  for (const auto& r : results) {
    if (!r.passed) return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace hqasim
