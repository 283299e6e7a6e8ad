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

#ifndef HQASIM_FOCK_STATE_H_
#define HQASIM_FOCK_STATE_H_

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace hqasim {

using Complex = std::complex<double>;

/// 2x2 complex matrix, row-major: m[row][col].
using Mat2 = std::array<std::array<Complex, 2>, 2>;

inline constexpr int kDefaultCutoff = 4;
inline constexpr int kPhotonBudget = 4;
inline constexpr double kDropTolerance = 1e-15;

/// Internal (spectral) index of a path. Only two values are needed: the
/// input photon's spectral mode and its orthogonal complement.
enum class Internal : std::uint8_t { kMatched = 0, kOrthogonal = 1 };

struct ModeLabel {
  std::string path;
  Internal internal = Internal::kMatched;

  bool operator==(const ModeLabel&) const = default;
};

std::string to_string(const ModeLabel& label);

/// Per-mode photon counts. Lexicographic comparison gives the canonical
/// ket ordering used everywhere for deterministic output.
using Occupation = std::vector<std::uint8_t>;

int total_photons(const Occupation& occ);

/// Sparse pure state of a few bosonic modes in a truncated Fock space.
///
/// Amplitudes below kDropTolerance are never stored. A state is a value:
/// every transformation returns a new FockState.
class FockState {
 public:
  FockState(std::vector<ModeLabel> modes, int cutoff = kDefaultCutoff);

  static FockState vacuum(std::vector<ModeLabel> modes,
                          int cutoff = kDefaultCutoff);
  static FockState basis(std::vector<ModeLabel> modes, const Occupation& occ,
                         int cutoff = kDefaultCutoff);

  std::size_t n_modes() const { return modes_.size(); }
  int cutoff() const { return cutoff_; }
  const std::vector<ModeLabel>& modes() const { return modes_; }
  const std::map<Occupation, Complex>& amplitudes() const { return amps_; }
  bool empty() const { return amps_.empty(); }

  /// Index of a mode label; throws std::out_of_range when absent.
  std::size_t mode_index(const std::string& path,
                         Internal internal = Internal::kMatched) const;
  bool has_mode(const std::string& path,
                Internal internal = Internal::kMatched) const;
  /// All registered mode indices belonging to a path, in registry order.
  std::vector<std::size_t> path_modes(const std::string& path) const;

  Complex amplitude(const Occupation& occ) const;
  double norm_squared() const;

  /// Adds `value` to the amplitude of `occ`, pruning the result if it falls
  /// below the drop tolerance. Enforces cutoff and photon budget.
  void add(const Occupation& occ, Complex value);

  FockState scaled(Complex factor) const;
  FockState normalized() const;

  /// ⟨this|other⟩; registries must match.
  Complex inner(const FockState& other) const;

 private:
  std::vector<ModeLabel> modes_;
  int cutoff_;
  std::map<Occupation, Complex> amps_;
};

FockState tensor(const FockState& a, const FockState& b);

/// Linear action on creation operators:
///   a†_i -> u[0][0] a†_i + u[1][0] a†_j,  a†_j -> u[0][1] a†_i + u[1][1] a†_j.
FockState apply_two_mode_unitary(const FockState& s, std::size_t i,
                                 std::size_t j, const Mat2& u);

/// Multiplies each ket by exp(i n_i phi).
FockState apply_phase(const FockState& s, std::size_t i, double phi);

/// Probability distribution of the occupations of `modes` (keys ordered like
/// `modes`). For an unnormalized state the values sum to its squared norm.
std::map<Occupation, double> occupation_marginal(
    const FockState& s, std::span<const std::size_t> modes);

/// Splits the state by the occupation of `modes`: each entry holds the
/// unnormalized projected state on the remaining modes.
std::map<Occupation, FockState> split_on_modes(
    const FockState& s, std::span<const std::size_t> modes);

/// Symmetric beam-splitter matrix [[√t, i√(1−t)], [i√(1−t), √t]].
Mat2 beam_splitter_matrix(double t);

Mat2 multiply(const Mat2& a, const Mat2& b);
Mat2 adjoint(const Mat2& a);
bool is_unitary(const Mat2& u, double tol = 1e-12);

/// Max-abs amplitude difference over the union of kets.
double state_distance(const FockState& a, const FockState& b);

}  // namespace hqasim

#endif  // HQASIM_FOCK_STATE_H_
