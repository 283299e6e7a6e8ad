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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hqasim/amplifier.h"
#include "hqasim/elements.h"
#include "test_support.h"

namespace hqasim {
namespace {

using testing::paths;

double weight_of(const Mixture& m, const Occupation& ket) {
  double w = 0.0;
  for (const auto& b : m.branches()) {
    if (std::norm(b.state.amplitude(ket)) > 1 - 1e-12) w += b.weight;
  }
  return w;
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

TEST_CASE("unit elements are identities") {
  std::mt19937_64 rng(4);
  const auto modes = paths({"a", "b"}, true);
  const Mixture m = Mixture::pure(testing::random_state(rng, modes, 3));
  CHECK(density_distance(apply_element(m, BeamSplitter{1.0, "a", "b"}), m) < 1e-15);
  CHECK(density_distance(apply_element(m, Loss{1.0, "a"}), m) < 1e-15);
  CHECK(apply_element(m, Loss{1.0, "a"}).size() == 1);
  CHECK(density_distance(apply_element(m, PhaseShift{0.0, "b"}), m) < 1e-15);
}

TEST_CASE("loss on one photon gives the 0.55 / 0.45 split") {
  const Mixture one = Mixture::pure(FockState::basis(paths({"a"}), {1}));
  const Mixture out = apply_element(one, Loss{0.55, "a"});
  CHECK(out.size() == 2);
  CHECK(std::abs(weight_of(out, {1}) - 0.55) < 1e-12);
  CHECK(std::abs(weight_of(out, {0}) - 0.45) < 1e-12);
  CHECK(std::abs(out.total_weight() - 1.0) < 1e-12);
}

TEST_CASE("loss on n photons follows the binomial law") {
  for (int n = 1; n <= 4; ++n) {
    for (double eta : {0.0, 0.3, 0.7, 1.0}) {
      const Mixture out =
          apply_loss(Mixture::pure(FockState::basis(
                         paths({"a"}), {static_cast<std::uint8_t>(n)})),
                     "a", eta);
      for (int k = 0; k <= n; ++k) {
        const double expected =
            binom(n, k) * std::pow(eta, k) * std::pow(1 - eta, n - k);
        CHECK(std::abs(weight_of(out, {static_cast<std::uint8_t>(k)}) - expected) <
              1e-12);
      }
    }
  }
  // η=0.7 on |2⟩: {0.49, 0.42, 0.09}.
  const Mixture two =
      apply_loss(Mixture::pure(FockState::basis(paths({"a"}), {2})), "a", 0.7);
  CHECK(std::abs(weight_of(two, {2}) - 0.49) < 1e-12);
  CHECK(std::abs(weight_of(two, {1}) - 0.42) < 1e-12);
  CHECK(std::abs(weight_of(two, {0}) - 0.09) < 1e-12);
}

TEST_CASE("loss scales the mean photon number of the path") {
  std::mt19937_64 rng(77);
  const auto modes = paths({"a", "b"}, true);
  for (int trial = 0; trial < 10; ++trial) {
    const Mixture m = Mixture::pure(testing::random_state(rng, modes, 3));
    auto mean_a = [](const Mixture& x) {
      double n = 0.0;
      for (const auto& b : x.branches()) {
        for (const auto& [occ, amp] : b.state.amplitudes()) {
          n += b.weight * std::norm(amp) * (occ[0] + occ[1]);
        }
      }
      return n;
    };
    const Mixture lossy = apply_loss(m, "a", 0.37);
    CHECK(std::abs(mean_a(lossy) - 0.37 * mean_a(m)) < 1e-12);
    CHECK(std::abs(lossy.total_weight() - 1.0) < 1e-12);
  }
}

TEST_CASE("loss commutes with phases and composes multiplicatively") {
  std::mt19937_64 rng(9);
  const auto modes = paths({"a", "b"}, true);
  for (int trial = 0; trial < 10; ++trial) {
    const Mixture m = Mixture::pure(testing::random_state(rng, modes, 3));
    const Mixture lp =
        apply_element(apply_loss(m, "a", 0.6), PhaseShift{0.8, "a"});
    const Mixture pl =
        apply_loss(apply_element(m, PhaseShift{0.8, "a"}), "a", 0.6);
    CHECK(density_distance(lp, pl) < 1e-12);

    const Mixture twice = apply_loss(apply_loss(m, "a", 0.8), "a", 0.55);
    const Mixture once = apply_loss(m, "a", 0.8 * 0.55);
    CHECK(density_distance(twice.merged(), once.merged()) < 1e-12);
  }
}

TEST_CASE("run_circuit: empty circuit and splitter inverse") {
  std::mt19937_64 rng(17);
  const auto modes = paths({"a", "b"}, true);
  const Mixture m = Mixture::pure(testing::random_state(rng, modes, 3));
  CHECK(density_distance(run_circuit(m, Circuit{modes, {}}), m) < 1e-15);

  // P·BS(t)·P is the inverse of BS(t) for P = diag(1, −1).
  const Circuit round_trip{modes,
                           {BeamSplitter{0.3, "a", "b"},
                            PhaseShift{std::numbers::pi, "b"},
                            BeamSplitter{0.3, "a", "b"},
                            PhaseShift{std::numbers::pi, "b"}}};
  CHECK(density_distance(run_circuit(m, round_trip), m) < 1e-12);
}

TEST_CASE("relabel permutes mode contents") {
  const auto modes = paths({"a", "b"});
  const Mixture m = Mixture::pure(FockState::basis(modes, {2, 0}));
  const Mixture r = apply_element(m, Relabel{{1, 0}});
  CHECK(std::norm(r.branches()[0].state.amplitude({0, 2})) ==
        doctest::Approx(1.0));
  CHECK_THROWS_AS(apply_element(m, Relabel{{0, 0}}), std::invalid_argument);
}

TEST_CASE("unregistered paths are rejected") {
  const Mixture m = Mixture::pure(FockState::vacuum(paths({"a", "b"})));
  CHECK_THROWS_AS(apply_element(m, BeamSplitter{0.5, "a", "zz"}), std::out_of_range);
  CHECK_THROWS_AS(apply_element(m, PhaseShift{0.5, "zz"}), std::out_of_range);
  CHECK_THROWS_AS(run_circuit(m, Circuit{paths({"x", "y"}), {}}),
                  std::invalid_argument);
}

TEST_CASE("single-photon amplifier wiring sends t of the ancilla to the output") {
  for (double t : {0.5, 0.7, 0.9, 0.99}) {
    AmplifierParams p;
    p.t = t;
    p.p_a = 1.0;
    p.p_in = 0.0;
    const AmplifierSetup setup = build_fock_hpa_circuit(p);
    REQUIRE(setup.sources.size() == 1);
    const Mixture out = run_circuit(
        Mixture::pure(setup.sources[0].state), setup.circuit);
    const FockState& s = out.branches()[0].state;
    const std::vector<std::size_t> out_modes = s.path_modes("out");
    double p_out = 0.0;
    for (const auto& [occ, prob] : occupation_marginal(s, out_modes)) {
      if (occ[0] + occ[1] == 1) p_out += prob;
    }
    CHECK(std::abs(p_out - t) < 1e-12);
  }
}

TEST_CASE("branch ordering is deterministic") {
  const auto modes = paths({"a"});
  const Mixture m = Mixture::pure(FockState::basis(modes, {2}), "src");
  const Mixture out = run_circuit(m, Circuit{modes, {Loss{0.5, "a"}}});
  REQUIRE(out.size() == 3);
  for (std::size_t k = 1; k < out.size(); ++k) {
    CHECK(out.branches()[k - 1].tag <= out.branches()[k].tag);
  }
}

}  // namespace
}  // namespace hqasim
