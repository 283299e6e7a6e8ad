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

#include "hqasim/elements.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hqasim {
namespace {

constexpr double kNullBranch = 1e-30;
constexpr const char* kAuxPrefix = "__loss_aux:";

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " outside [0,1]");
  }
}

std::string occupation_string(const Occupation& occ) {
  std::string s;
  for (auto n : occ) s += static_cast<char>('0' + n);
  return s;
}

FockState apply_on_path_pair(const FockState& s, const std::string& a,
                             const std::string& b, const Mat2& u) {
  s.path_modes(a);
  s.path_modes(b);
  FockState out = s;
  for (Internal in : {Internal::kMatched, Internal::kOrthogonal}) {
    const bool ha = s.has_mode(a, in);
    const bool hb = s.has_mode(b, in);
    if (ha != hb) {
      throw std::invalid_argument("paths " + a + " and " + b +
                                  " register different internal indices");
    }
    if (ha) {
      out = apply_two_mode_unitary(out, s.mode_index(a, in),
                                   s.mode_index(b, in), u);
    }
  }
  return out;
}

FockState permute_modes(const FockState& s,
                        const std::vector<std::size_t>& perm) {
  if (perm.size() != s.n_modes()) {
    throw std::invalid_argument("relabel permutation has wrong length");
  }
  std::vector<std::size_t> sorted = perm;
  std::ranges::sort(sorted);
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (sorted[k] != k) throw std::invalid_argument("not a permutation");
  }
  FockState out(s.modes(), s.cutoff());
  for (const auto& [occ, amp] : s.amplitudes()) {
    Occupation next(occ.size());
    for (std::size_t k = 0; k < occ.size(); ++k) next[k] = occ[perm[k]];
    out.add(next, amp);
  }
  return out;
}

const Occupation& leading_ket(const FockState& s) {
  static const Occupation kEmpty;
  return s.empty() ? kEmpty : s.amplitudes().begin()->first;
}

}  // namespace

Mixture::Mixture(std::vector<Branch> branches) : branches_(std::move(branches)) {
  for (const auto& b : branches_) {
    if (!(b.weight > 0.0 && b.weight <= 1.0 + 1e-12)) {
      throw std::invalid_argument("branch weight outside (0,1]");
    }
  }
  if (!branches_.empty() && std::abs(total_weight() - 1.0) > 1e-9) {
    throw std::invalid_argument("mixture weights do not sum to one");
  }
}

Mixture Mixture::pure(FockState state, std::string tag) {
  return Mixture({Branch{1.0, state.normalized(), std::move(tag)}});
}

double Mixture::total_weight() const {
  double w = 0.0;
  for (const auto& b : branches_) w += b.weight;
  return w;
}

Mixture Mixture::sorted() const {
  Mixture out = *this;
  std::ranges::stable_sort(out.branches_, [](const Branch& x, const Branch& y) {
    if (x.tag != y.tag) return x.tag < y.tag;
    return leading_ket(x.state) < leading_ket(y.state);
  });
  return out;
}

Mixture Mixture::merged(double tol) const {
  std::vector<Branch> out;
  for (const auto& b : branches_) {
    bool absorbed = false;
    for (auto& o : out) {
      if (o.state.modes() != b.state.modes()) continue;
      const Complex ov = o.state.inner(b.state);
      if (std::abs(std::abs(ov) - 1.0) <= tol) {
        o.weight += b.weight;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) out.push_back(b);
  }
  Mixture m;
  m.branches_ = std::move(out);
  return m;
}

Mixture Mixture::renormalized() const {
  const double w = total_weight();
  if (!(w > 0.0)) throw std::domain_error("cannot renormalize empty mixture");
  Mixture m;
  m.branches_ = branches_;
  for (auto& b : m.branches_) b.weight /= w;
  return m;
}

DensityMatrix density(const Mixture& m) {
  DensityMatrix rho;
  for (const auto& b : m.branches()) {
    for (const auto& [ok, ak] : b.state.amplitudes()) {
      for (const auto& [ob, ab] : b.state.amplitudes()) {
        rho[{ok, ob}] += b.weight * ak * std::conj(ab);
      }
    }
  }
  return rho;
}

double density_distance(const Mixture& a, const Mixture& b) {
  if (!a.empty() && !b.empty() &&
      a.branches().front().state.modes() != b.branches().front().state.modes()) {
    throw std::invalid_argument("density comparison across registries");
  }
  const DensityMatrix ra = density(a);
  const DensityMatrix rb = density(b);
  double d = 0.0;
  for (const auto& [k, v] : ra) {
    auto it = rb.find(k);
    d = std::max(d, std::abs(v - (it == rb.end() ? Complex{} : it->second)));
  }
  for (const auto& [k, v] : rb) {
    auto it = ra.find(k);
    d = std::max(d, std::abs(v - (it == ra.end() ? Complex{} : it->second)));
  }
  return d;
}

std::vector<std::pair<Occupation, FockState>> loss_branches(
    const FockState& s, const std::string& path, double eta_keep) {
  check_probability(eta_keep, "loss transmission");
  const std::vector<std::size_t> targets = s.path_modes(path);

  std::vector<ModeLabel> aux_labels;
  for (auto m : targets) {
    aux_labels.push_back({kAuxPrefix + path, s.modes()[m].internal});
  }
  FockState joint = tensor(s, FockState::vacuum(aux_labels, s.cutoff()));
  const Mat2 u = beam_splitter_matrix(eta_keep);
  std::vector<std::size_t> aux_modes;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const std::size_t aux = s.n_modes() + k;
    joint = apply_two_mode_unitary(joint, targets[k], aux, u);
    aux_modes.push_back(aux);
  }
  std::vector<std::pair<Occupation, FockState>> out;
  for (auto& [lost, rest] : split_on_modes(joint, aux_modes)) {
    out.emplace_back(lost, std::move(rest));
  }
  return out;
}

Mixture apply_loss(const Mixture& m, const std::string& path, double eta_keep) {
  check_probability(eta_keep, "loss transmission");
  std::vector<Branch> out;
  for (const auto& b : m.branches()) {
    for (auto& [lost, rest] : loss_branches(b.state, path, eta_keep)) {
      const double p = rest.norm_squared();
      if (p <= kNullBranch) continue;
      std::string tag = b.tag;
      if (total_photons(lost) > 0) {
        tag += "|lost:" + path + ":" + occupation_string(lost);
      }
      out.push_back({b.weight * p, rest.normalized(), std::move(tag)});
    }
  }
  return Mixture(std::move(out));
}

Mixture apply_element(const Mixture& m, const Element& e) {
  return std::visit(
      Overloaded{
          [&](const BeamSplitter& bs) {
            const Mat2 u = beam_splitter_matrix(bs.t);
            if (bs.path_a == bs.path_b) {
              throw std::invalid_argument("beam splitter needs two paths");
            }
            std::vector<Branch> out = m.branches();
            for (auto& b : out) {
              b.state = apply_on_path_pair(b.state, bs.path_a, bs.path_b, u);
            }
            return Mixture(std::move(out));
          },
          [&](const PhaseShift& ps) {
            std::vector<Branch> out = m.branches();
            for (auto& b : out) {
              for (auto k : b.state.path_modes(ps.path)) {
                b.state = apply_phase(b.state, k, ps.phi);
              }
            }
            return Mixture(std::move(out));
          },
          [&](const Loss& l) { return apply_loss(m, l.path, l.eta_keep); },
          [&](const Relabel& r) {
            std::vector<Branch> out = m.branches();
            for (auto& b : out) b.state = permute_modes(b.state, r.permutation);
            return Mixture(std::move(out));
          },
      },
      e);
}

Mixture run_circuit(const Mixture& m, const Circuit& c) {
  for (const auto& b : m.branches()) {
    if (b.state.modes() != c.modes) {
      throw std::invalid_argument("mixture registry differs from circuit");
    }
  }
  Mixture cur = m;
  for (const auto& e : c.elements) cur = apply_element(cur, e);
  return cur.sorted();
}

}  // namespace hqasim
