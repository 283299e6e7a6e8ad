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

// CSV-producing subcommands. Every command validates its config before any
// computation and returns the full CSV text ('.' decimals, '\n' endings,
// 9 significant digits).

#ifndef HQASIM_COMMANDS_H_
#define HQASIM_COMMANDS_H_

#include <iosfwd>
#include <string>

#include "hqasim/run_config.h"

namespace hqasim {

std::string format_number(double v);

/// p_in,gain_analytic,gain_oracle,p_out_analytic,p_out_oracle
std::string cmd_gain_curve(const RunConfig& config);
/// delta_phi,rate_psi_plus,rate_psi_minus,visibility_plus,visibility_minus,
/// fidelity_plus,fidelity_minus
std::string cmd_fringe(const RunConfig& config);
/// mu,coincidence_closed_form,coincidence_simulated,visibility_closed_form,
/// visibility_simulated
std::string cmd_hom(const RunConfig& config);
/// Monte Carlo counts and ratio estimates over the P_in grid.
std::string cmd_estimate(const RunConfig& config);
/// Runs the acceptance checks, one line per criterion; returns an exit code.
/// `quick` skips the Monte Carlo criterion.
int cmd_selftest(std::ostream& log, bool quick);

}  // namespace hqasim

#endif  // HQASIM_COMMANDS_H_
