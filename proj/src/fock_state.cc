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

#include "hqasim/fock_state.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hqasim {
namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double binomial(int n, int k) {
  return factorial(n) / (factorial(k) * factorial(n - k));
}

Complex ipow(Complex base, int e) {
  Complex r = 1.0;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

}  // namespace

std::string to_string(const ModeLabel& label) {
  return label.path +
         (label.internal == Internal::kMatched ? ":matched" : ":orthogonal");
}

int total_photons(const Occupation& occ) {
  return std::accumulate(occ.begin(), occ.end(), 0);
}

FockState::FockState(std::vector<ModeLabel> modes, int cutoff)
    : modes_(std::move(modes)), cutoff_(cutoff) {
  if (cutoff_ < 0) throw std::invalid_argument("negative cutoff");
  for (std::size_t a = 0; a < modes_.size(); ++a) {
    for (std::size_t b = a + 1; b < modes_.size(); ++b) {
      if (modes_[a] == modes_[b]) {
        throw std::invalid_argument("duplicate mode label " +
                                    to_string(modes_[a]));
      }
    }
  }
}

FockState FockState::vacuum(std::vector<ModeLabel> modes, int cutoff) {
  Occupation zero(modes.size(), 0);
  return basis(std::move(modes), zero, cutoff);
}

FockState FockState::basis(std::vector<ModeLabel> modes, const Occupation& occ,
                           int cutoff) {
  FockState s(std::move(modes), cutoff);
  s.add(occ, 1.0);
  return s;
}

std::size_t FockState::mode_index(const std::string& path,
                                  Internal internal) const {
  for (std::size_t k = 0; k < modes_.size(); ++k) {
    if (modes_[k].path == path && modes_[k].internal == internal) return k;
  }
  throw std::out_of_range("unregistered mode " +
                          to_string(ModeLabel{path, internal}));
}

bool FockState::has_mode(const std::string& path, Internal internal) const {
  return std::ranges::any_of(modes_, [&](const ModeLabel& m) {
    return m.path == path && m.internal == internal;
  });
}

std::vector<std::size_t> FockState::path_modes(const std::string& path) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < modes_.size(); ++k) {
    if (modes_[k].path == path) out.push_back(k);
  }
  if (out.empty()) throw std::out_of_range("unregistered path " + path);
  return out;
}

Complex FockState::amplitude(const Occupation& occ) const {
  auto it = amps_.find(occ);
  return it == amps_.end() ? Complex{} : it->second;
}

double FockState::norm_squared() const {
  double n = 0.0;
  for (const auto& [occ, a] : amps_) n += std::norm(a);
  return n;
}

void FockState::add(const Occupation& occ, Complex value) {
  if (occ.size() != modes_.size()) {
    throw std::invalid_argument("occupation length does not match mode count");
  }
  for (auto n : occ) {
    if (n > cutoff_) throw std::out_of_range("occupation exceeds cutoff");
  }
  if (total_photons(occ) > kPhotonBudget) {
    throw std::out_of_range("occupation exceeds photon budget");
  }
  auto [it, inserted] = amps_.try_emplace(occ, value);
  if (!inserted) it->second += value;
  if (std::abs(it->second) < kDropTolerance) amps_.erase(it);
}

FockState FockState::scaled(Complex factor) const {
  FockState out(modes_, cutoff_);
  for (const auto& [occ, a] : amps_) out.add(occ, a * factor);
  return out;
}

FockState FockState::normalized() const {
  const double n = norm_squared();
  if (n <= 0.0) throw std::domain_error("cannot normalize a null state");
  return scaled(1.0 / std::sqrt(n));
}

Complex FockState::inner(const FockState& other) const {
  if (modes_ != other.modes_) {
    throw std::invalid_argument("inner product of mismatched registries");
  }
  Complex acc{};
  for (const auto& [occ, a] : amps_) acc += std::conj(a) * other.amplitude(occ);
  return acc;
}

FockState tensor(const FockState& a, const FockState& b) {
  if (a.cutoff() != b.cutoff()) {
    throw std::invalid_argument("tensor of states with different cutoffs");
  }
  std::vector<ModeLabel> modes = a.modes();
  modes.insert(modes.end(), b.modes().begin(), b.modes().end());
  FockState out(std::move(modes), a.cutoff());
  for (const auto& [oa, xa] : a.amplitudes()) {
    for (const auto& [ob, xb] : b.amplitudes()) {
      Occupation occ = oa;
      occ.insert(occ.end(), ob.begin(), ob.end());
      out.add(occ, xa * xb);
    }
  }
  return out;
}

FockState apply_two_mode_unitary(const FockState& s, std::size_t i,
                                 std::size_t j, const Mat2& u) {
  if (i >= s.n_modes() || j >= s.n_modes()) {
    throw std::out_of_range("mode index out of range");
  }
  if (i == j) throw std::invalid_argument("two-mode unitary needs i != j");
  if (!is_unitary(u)) throw std::invalid_argument("matrix is not unitary");

  FockState out(s.modes(), s.cutoff());
  for (const auto& [occ, amp] : s.amplitudes()) {
    const int a = occ[i];
    const int b = occ[j];
    const double norm_in = factorial(a) * factorial(b);
    // (u00 x + u10 y)^a (u01 x + u11 y)^b with x = a†_i, y = a†_j.
    for (int k = 0; k <= a; ++k) {
      const Complex ck = binomial(a, k) * ipow(u[0][0], k) *
                         ipow(u[1][0], a - k);
      for (int l = 0; l <= b; ++l) {
        const Complex cl = binomial(b, l) * ipow(u[0][1], l) *
                           ipow(u[1][1], b - l);
        const int p = k + l;
        const int q = a + b - p;
        const double scale = std::sqrt(factorial(p) * factorial(q) / norm_in);
        Occupation next = occ;
        next[i] = static_cast<std::uint8_t>(p);
        next[j] = static_cast<std::uint8_t>(q);
        out.add(next, amp * ck * cl * scale);
      }
    }
  }
  return out;
}

FockState apply_phase(const FockState& s, std::size_t i, double phi) {
  if (i >= s.n_modes()) throw std::out_of_range("mode index out of range");
  FockState out(s.modes(), s.cutoff());
  for (const auto& [occ, amp] : s.amplitudes()) {
    out.add(occ, amp * std::polar(1.0, phi * occ[i]));
  }
  return out;
}

std::map<Occupation, double> occupation_marginal(
    const FockState& s, std::span<const std::size_t> modes) {
  for (std::size_t a = 0; a < modes.size(); ++a) {
    if (modes[a] >= s.n_modes()) throw std::out_of_range("mode out of range");
    for (std::size_t b = a + 1; b < modes.size(); ++b) {
      if (modes[a] == modes[b]) throw std::invalid_argument("repeated mode");
    }
  }
  std::map<Occupation, double> out;
  for (const auto& [occ, amp] : s.amplitudes()) {
    Occupation sub;
    sub.reserve(modes.size());
    for (auto m : modes) sub.push_back(occ[m]);
    out[sub] += std::norm(amp);
  }
  return out;
}

std::map<Occupation, FockState> split_on_modes(
    const FockState& s, std::span<const std::size_t> modes) {
  std::vector<bool> picked(s.n_modes(), false);
  for (auto m : modes) {
    if (m >= s.n_modes()) throw std::out_of_range("mode out of range");
    if (picked[m]) throw std::invalid_argument("repeated mode");
    picked[m] = true;
  }
  std::vector<ModeLabel> rest;
  for (std::size_t k = 0; k < s.n_modes(); ++k) {
    if (!picked[k]) rest.push_back(s.modes()[k]);
  }
  std::map<Occupation, FockState> out;
  for (const auto& [occ, amp] : s.amplitudes()) {
    Occupation sub;
    Occupation remaining;
    for (auto m : modes) sub.push_back(occ[m]);
    for (std::size_t k = 0; k < s.n_modes(); ++k) {
      if (!picked[k]) remaining.push_back(occ[k]);
    }
    auto it = out.try_emplace(sub, rest, s.cutoff()).first;
    it->second.add(remaining, amp);
  }
  return out;
}

Mat2 beam_splitter_matrix(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("beam-splitter transmission outside [0,1]");
  }
  const double tr = std::sqrt(t);
  const Complex rf{0.0, std::sqrt(1.0 - t)};
  return Mat2{{{tr, rf}, {rf, tr}}};
}

Mat2 multiply(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int r = 0; r < 2; ++r) {
    for (int col = 0; col < 2; ++col) {
      c[r][col] = a[r][0] * b[0][col] + a[r][1] * b[1][col];
    }
  }
  return c;
}

Mat2 adjoint(const Mat2& a) {
  return Mat2{{{std::conj(a[0][0]), std::conj(a[1][0])},
               {std::conj(a[0][1]), std::conj(a[1][1])}}};
}

bool is_unitary(const Mat2& u, double tol) {
  const Mat2 p = multiply(adjoint(u), u);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const Complex expected = r == c ? 1.0 : 0.0;
      if (std::abs(p[r][c] - expected) > tol) return false;
    }
  }
  return true;
}

double state_distance(const FockState& a, const FockState& b) {
  double d = 0.0;
  for (const auto& [occ, x] : a.amplitudes()) {
    d = std::max(d, std::abs(x - b.amplitude(occ)));
  }
  for (const auto& [occ, x] : b.amplitudes()) {
    d = std::max(d, std::abs(x - a.amplitude(occ)));
  }
  return d;
}

}  // namespace hqasim
