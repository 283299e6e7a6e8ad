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

// Acceptance runner: one PASS/FAIL line per criterion.

#include <iostream>

#include "hqasim/acceptance.h"

int main() {
  int failed = 0;
  for (const auto& r : hqasim::run_acceptance(std::cout)) {
    if (!r.passed) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : "criteria failed: " + std::to_string(failed))
            << "\n";
  return failed == 0 ? 0 : 1;
}
