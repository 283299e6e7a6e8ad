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

#ifndef HQASIM_ACCEPTANCE_H_
#define HQASIM_ACCEPTANCE_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace hqasim {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// Individual criteria; each is self-contained and pins its own tolerances.
CriterionResult check_gain_formula_grid();
CriterionResult check_maximum_gain();
CriterionResult check_output_probability_bound();
CriterionResult check_fidelity_reproduction();
CriterionResult check_hom_visibility();
CriterionResult check_detector_identity();
CriterionResult check_monte_carlo_consistency();
CriterionResult check_declared_scope();

/// Runs every criterion, printing one PASS/FAIL line each to `log`.
/// `quick` skips the long Monte Carlo criterion and reports it as SKIP.
std::vector<CriterionResult> run_acceptance(std::ostream& log, bool quick = false);

}  // namespace hqasim

#endif  // HQASIM_ACCEPTANCE_H_
