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

#ifndef HQASIM_ELEMENTS_H_
#define HQASIM_ELEMENTS_H_

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hqasim/fock_state.h"

namespace hqasim {

// Elements address paths; an element on a path acts identically on both
// internal indices of that path.

/// Two-path splitter with transmission t, matrix beam_splitter_matrix(t).
struct BeamSplitter {
  double t = 1.0;
  std::string path_a;
  std::string path_b;
};

struct PhaseShift {
  double phi = 0.0;
  std::string path;
};

/// Keeps each photon on `path` with probability eta_keep.
struct Loss {
  double eta_keep = 1.0;
  std::string path;
};

/// Output mode k takes the content of input mode permutation[k].
struct Relabel {
  std::vector<std::size_t> permutation;
};

using Element = std::variant<BeamSplitter, PhaseShift, Loss, Relabel>;

struct Circuit {
  std::vector<ModeLabel> modes;
  std::vector<Element> elements;
};

struct Branch {
  double weight = 0.0;
  FockState state;
  std::string tag;
};

/// Classical ensemble of normalized pure states.
class Mixture {
 public:
  Mixture() = default;
  explicit Mixture(std::vector<Branch> branches);
  static Mixture pure(FockState state, std::string tag = "");

  const std::vector<Branch>& branches() const { return branches_; }
  std::size_t size() const { return branches_.size(); }
  bool empty() const { return branches_.empty(); }
  double total_weight() const;

  /// Branch ordering: provenance tag, then the leading ket of each state.
  Mixture sorted() const;
  /// Combines branches whose states agree up to a global phase.
  Mixture merged(double tol = 1e-12) const;
  /// Rescales weights to sum to one; throws on an empty mixture.
  Mixture renormalized() const;

 private:
  std::vector<Branch> branches_;
};

using DensityMatrix = std::map<std::pair<Occupation, Occupation>, Complex>;

/// ρ = Σ w |ψ⟩⟨ψ| in sparse form. All branches must share a registry.
DensityMatrix density(const Mixture& m);
double density_distance(const Mixture& a, const Mixture& b);

Mixture apply_element(const Mixture& m, const Element& e);
Mixture apply_loss(const Mixture& m, const std::string& path, double eta_keep);
Mixture run_circuit(const Mixture& m, const Circuit& c);

/// Loss on a single pure state, returned as unnormalized branches keyed by
/// the lost-photon record (one entry per auxiliary occupation).
std::vector<std::pair<Occupation, FockState>> loss_branches(
    const FockState& s, const std::string& path, double eta_keep);

}  // namespace hqasim

#endif  // HQASIM_ELEMENTS_H_
