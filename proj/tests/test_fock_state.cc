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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "hqasim/fock_state.h"
#include "test_support.h"

namespace hqasim {
namespace {

using testing::paths;

const Complex kI{0.0, 1.0};

// Permanent-based transition amplitude: independent of the creation-operator
// expansion used by apply_two_mode_unitary.
Complex permanent(const std::vector<std::vector<Complex>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Complex acc{};
  do {
    Complex prod = 1.0;
    for (std::size_t r = 0; r < n; ++r) prod *= m[r][perm[r]];
    acc += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return n == 0 ? Complex{1.0} : acc;
}

double fact(int n) { return n <= 1 ? 1.0 : n * fact(n - 1); }

// ⟨q_i q_j | U | p_i p_j⟩ for the two-mode transformation a†_in -> Σ u[out][in] a†_out.
Complex transition(const Mat2& u, int pi, int pj, int qi, int qj) {
  if (pi + pj != qi + qj) return 0.0;
  std::vector<int> in_modes, out_modes;
  for (int k = 0; k < pi; ++k) in_modes.push_back(0);
  for (int k = 0; k < pj; ++k) in_modes.push_back(1);
  for (int k = 0; k < qi; ++k) out_modes.push_back(0);
  for (int k = 0; k < qj; ++k) out_modes.push_back(1);
  std::vector<std::vector<Complex>> m(out_modes.size(),
                                      std::vector<Complex>(in_modes.size()));
  for (std::size_t r = 0; r < out_modes.size(); ++r) {
    for (std::size_t c = 0; c < in_modes.size(); ++c) {
      m[r][c] = u[out_modes[r]][in_modes[c]];
    }
  }
  return permanent(m) / std::sqrt(fact(pi) * fact(pj) * fact(qi) * fact(qj));
}

TEST_CASE("tensor of basis kets and superpositions") {
  const FockState one = FockState::basis(paths({"a"}), {1});
  const FockState zero = FockState::basis(paths({"b"}), {0});
  const FockState t = tensor(one, zero);
  CHECK(t.n_modes() == 2);
  CHECK(t.amplitudes().size() == 1);
  CHECK(std::abs(t.amplitude({1, 0}) - 1.0) < 1e-15);

  FockState plus(paths({"a"}));
  plus.add({0}, 1.0 / std::sqrt(2.0));
  plus.add({1}, 1.0 / std::sqrt(2.0));
  const FockState t2 = tensor(plus, FockState::basis(paths({"b"}), {1}));
  CHECK(std::abs(t2.amplitude({0, 1}) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(t2.amplitude({1, 1}) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(t2.amplitudes().size() == 2);
}

TEST_CASE("tensor norm is the product of norms") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const FockState a = testing::random_state(rng, paths({"a", "b"}), 2)
                            .scaled(0.5 + 0.1 * trial);
    const FockState b = testing::random_state(rng, paths({"c"}), 2).scaled(1.3);
    double direct = 0.0;
    for (const auto& [oa, xa] : a.amplitudes()) {
      for (const auto& [ob, xb] : b.amplitudes()) direct += std::norm(xa * xb);
    }
    CHECK(std::abs(tensor(a, b).norm_squared() - direct) < 1e-12);
    CHECK(std::abs(direct - a.norm_squared() * b.norm_squared()) < 1e-12);
  }
}

TEST_CASE("tensor rejects cutoff mismatch and duplicate labels") {
  const FockState a = FockState::vacuum(paths({"a"}), 4);
  const FockState b = FockState::vacuum(paths({"b"}), 3);
  CHECK_THROWS_AS(tensor(a, b), std::invalid_argument);
  CHECK_THROWS_AS(tensor(a, a), std::invalid_argument);
}

TEST_CASE("two-mode unitary: identity, HOM and single photon") {
  std::mt19937_64 rng(3);
  const FockState s = testing::random_state(rng, paths({"a", "b", "c"}), 3);
  const Mat2 id{{{1.0, 0.0}, {0.0, 1.0}}};
  CHECK(state_distance(apply_two_mode_unitary(s, 0, 2, id), s) < 1e-15);

  const FockState hom =
      apply_two_mode_unitary(FockState::basis(paths({"a", "b"}), {1, 1}), 0, 1,
                             beam_splitter_matrix(0.5));
  CHECK(hom.amplitude({1, 1}) == Complex{0.0, 0.0});
  CHECK(hom.amplitudes().size() == 2);
  CHECK(std::abs(std::norm(hom.amplitude({2, 0})) - 0.5) < 1e-15);
  CHECK(std::abs(std::norm(hom.amplitude({0, 2})) - 0.5) < 1e-15);

  const FockState single =
      apply_two_mode_unitary(FockState::basis(paths({"a", "b"}), {1, 0}), 0, 1,
                             beam_splitter_matrix(0.9));
  CHECK(std::abs(single.amplitude({1, 0}) - std::sqrt(0.9)) < 1e-15);
  CHECK(std::abs(single.amplitude({0, 1}) - kI * std::sqrt(0.1)) < 1e-15);
}

TEST_CASE("two-mode unitary matches the permanent formula") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Mat2 u = testing::random_unitary(rng);
    for (int pi = 0; pi <= 3; ++pi) {
      for (int pj = 0; pi + pj <= 4; ++pj) {
        const FockState out = apply_two_mode_unitary(
            FockState::basis(paths({"a", "b"}), {static_cast<std::uint8_t>(pi),
                                                static_cast<std::uint8_t>(pj)}),
            0, 1, u);
        for (int qi = 0; qi <= pi + pj; ++qi) {
          const int qj = pi + pj - qi;
          const Complex expected = transition(u, pi, pj, qi, qj);
          const Complex got = out.amplitude({static_cast<std::uint8_t>(qi),
                                             static_cast<std::uint8_t>(qj)});
          CHECK(std::abs(got - expected) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("two-mode unitary errors") {
  const FockState s = FockState::vacuum(paths({"a", "b"}));
  const Mat2 bad{{{1.0, 1.0}, {0.0, 1.0}}};
  CHECK_THROWS_AS(apply_two_mode_unitary(s, 0, 1, bad), std::invalid_argument);
  CHECK_THROWS_AS(apply_two_mode_unitary(s, 0, 0, beam_splitter_matrix(0.5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_two_mode_unitary(s, 0, 5, beam_splitter_matrix(0.5)),
                  std::out_of_range);
}

TEST_CASE("phase shifts") {
  std::mt19937_64 rng(8);
  const FockState s = testing::random_state(rng, paths({"a", "b"}), 3);
  CHECK(state_distance(apply_phase(s, 1, 0.0), s) < 1e-15);

  const FockState one = FockState::basis(paths({"a"}), {1});
  CHECK(std::abs(apply_phase(one, 0, std::numbers::pi).amplitude({1}) + 1.0) <
        1e-15);
  const FockState two = FockState::basis(paths({"a"}), {2});
  CHECK(std::abs(apply_phase(two, 0, std::numbers::pi / 2).amplitude({2}) + 1.0) <
        1e-15);
  CHECK(std::abs(apply_phase(s, 0, 1.234).norm_squared() - 1.0) < 1e-15);
  CHECK_THROWS_AS(apply_phase(s, 7, 1.0), std::out_of_range);
}

TEST_CASE("occupation marginals") {
  const FockState ket = FockState::basis(paths({"a", "b"}), {2, 1});
  const std::vector<std::size_t> both = {0, 1};
  const auto full = occupation_marginal(ket, both);
  CHECK(full.size() == 1);
  CHECK(full.at({2, 1}) == doctest::Approx(1.0));

  FockState split(paths({"a", "b"}));
  split.add({1, 0}, 1.0 / std::sqrt(2.0));
  split.add({0, 1}, 1.0 / std::sqrt(2.0));
  const std::vector<std::size_t> first = {0};
  const auto m0 = occupation_marginal(split, first);
  CHECK(std::abs(m0.at({0}) - 0.5) < 1e-15);
  CHECK(std::abs(m0.at({1}) - 0.5) < 1e-15);
}

TEST_CASE("marginals agree with dense enumeration") {
  std::mt19937_64 rng(21);
  const auto modes = paths({"a", "b", "c"});
  for (int trial = 0; trial < 20; ++trial) {
    const FockState s = testing::random_state(rng, modes, 3);
    const std::vector<std::size_t> picked = {2, 0};
    // dense: iterate every basis ket and accumulate its probability.
    std::map<Occupation, double> dense;
    double total = 0.0;
    for (const auto& occ : testing::enumerate_occupations(3, kPhotonBudget)) {
      const double p = std::norm(s.amplitude(occ));
      dense[{occ[2], occ[0]}] += p;
      total += p;
    }
    const auto sparse = occupation_marginal(s, picked);
    for (const auto& [k, p] : dense) {
      const double got = sparse.contains(k) ? sparse.at(k) : 0.0;
      CHECK(std::abs(got - p) < 1e-12);
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
}

TEST_CASE("property: norm and photon number survive random circuits") {
  std::mt19937_64 rng(1234);
  const auto modes = paths({"a", "b", "c", "d"});
  std::uniform_int_distribution<std::size_t> pick(0, 3);
  std::uniform_real_distribution<double> ang(-4.0, 4.0);
  for (int n = 1; n <= 3; ++n) {
    FockState s = testing::random_state_fixed_n(rng, modes, n);
    for (int step = 0; step < 100; ++step) {
      const std::size_t i = pick(rng);
      std::size_t j = pick(rng);
      while (j == i) j = pick(rng);
      s = step % 3 == 0 ? apply_phase(s, i, ang(rng))
                        : apply_two_mode_unitary(s, i, j, testing::random_unitary(rng));
    }
    CHECK(std::abs(s.norm_squared() - 1.0) < 1e-12);
    for (const auto& [occ, amp] : s.amplitudes()) CHECK(total_photons(occ) == n);
  }
}

TEST_CASE("property: u then v equals v*u") {
  std::mt19937_64 rng(99);
  const auto modes = paths({"a", "b", "c"});
  for (int trial = 0; trial < 25; ++trial) {
    const FockState s = testing::random_state(rng, modes, 3);
    const Mat2 u = testing::random_unitary(rng);
    const Mat2 v = testing::random_unitary(rng);
    const FockState two_steps =
        apply_two_mode_unitary(apply_two_mode_unitary(s, 0, 2, u), 0, 2, v);
    const FockState one_step = apply_two_mode_unitary(s, 0, 2, multiply(v, u));
    CHECK(state_distance(two_steps, one_step) < 1e-12);
  }
}

TEST_CASE("cutoff and budget are enforced") {
  FockState s(paths({"a", "b"}), 2);
  CHECK_THROWS_AS(s.add({3, 0}, 1.0), std::out_of_range);
  FockState big(paths({"a", "b"}));
  CHECK_THROWS_AS(big.add({3, 2}, 1.0), std::out_of_range);
  s.add({1, 1}, 1e-16);
  CHECK(s.empty());
}

}  // namespace
}  // namespace hqasim
