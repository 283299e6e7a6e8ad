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

// Random-state generators shared by the unit tests.

#ifndef HQASIM_TESTS_TEST_SUPPORT_H_
#define HQASIM_TESTS_TEST_SUPPORT_H_

#include <random>
#include <string>
#include <vector>

#include "hqasim/fock_state.h"

namespace hqasim::testing {

inline std::vector<ModeLabel> paths(const std::vector<std::string>& names,
                                    bool both_internal = false) {
  std::vector<ModeLabel> out;
  for (const auto& n : names) {
    out.push_back({n, Internal::kMatched});
    if (both_internal) out.push_back({n, Internal::kOrthogonal});
  }
  return out;
}

/// All occupations of `modes` modes with total photon number <= max_total.
inline std::vector<Occupation> enumerate_occupations(std::size_t modes,
                                                     int max_total) {
  std::vector<Occupation> out;
  Occupation cur(modes, 0);
  auto rec = [&](auto&& self, std::size_t k, int left) -> void {
    if (k == modes) {
      out.push_back(cur);
      return;
    }
    for (int n = 0; n <= left; ++n) {
      cur[k] = static_cast<std::uint8_t>(n);
      self(self, k + 1, left - n);
    }
    cur[k] = 0;
  };
  rec(rec, 0, max_total);
  return out;
}

/// Normalized random superposition over kets with at most `max_total` photons.
inline FockState random_state(std::mt19937_64& rng,
                              const std::vector<ModeLabel>& modes,
                              int max_total, double fill = 0.6) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u;
  FockState s(modes);
  for (const auto& occ : enumerate_occupations(modes.size(), max_total)) {
    if (u(rng) < fill) s.add(occ, Complex{g(rng), g(rng)});
  }
  if (s.empty()) s.add(Occupation(modes.size(), 0), 1.0);
  return s.normalized();
}

/// Random state with a fixed total photon number.
inline FockState random_state_fixed_n(std::mt19937_64& rng,
                                      const std::vector<ModeLabel>& modes,
                                      int n) {
  std::normal_distribution<double> g;
  FockState s(modes);
  for (const auto& occ : enumerate_occupations(modes.size(), n)) {
    if (total_photons(occ) == n) s.add(occ, Complex{g(rng), g(rng)});
  }
  return s.normalized();
}

inline Mat2 random_unitary(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 6.283185307179586);
  std::uniform_real_distribution<double> tt(0.0, 1.0);
  const double t = tt(rng);
  const Complex a = std::polar(std::sqrt(t), u(rng));
  const Complex b = std::polar(std::sqrt(1.0 - t), u(rng));
  const Complex ph = std::polar(1.0, u(rng));
  return Mat2{{{a, -std::conj(b) * ph}, {b, std::conj(a) * ph}}};
}

}  // namespace hqasim::testing

#endif  // HQASIM_TESTS_TEST_SUPPORT_H_
