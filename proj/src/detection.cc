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

#include "hqasim/detection.h"

#include <cmath>
#include <stdexcept>

namespace hqasim {
namespace {

constexpr double kZeroProbability = 1e-30;

void validate(const DetectorSpec& spec) {
  if (!(spec.efficiency >= 0.0 && spec.efficiency <= 1.0)) {
    throw std::invalid_argument("detector efficiency outside [0,1]");
  }
  if (!(spec.dark_click_prob >= 0.0 && spec.dark_click_prob < 1.0)) {
    throw std::invalid_argument("dark click probability outside [0,1)");
  }
}

}  // namespace

double no_click_weight(int photons, const DetectorSpec& spec) {
  validate(spec);
  if (photons < 0) throw std::invalid_argument("negative photon count");
  return std::pow(1.0 - spec.efficiency, photons) * (1.0 - spec.dark_click_prob);
}

Measurement measure(const Mixture& m, std::span<const Detector> detectors,
                    const ClickPattern& pattern) {
  for (const auto& [name, outcome] : pattern) {
    bool known = false;
    for (const auto& d : detectors) known = known || d.name == name;
    if (!known) throw std::invalid_argument("unknown detector " + name);
  }
  for (const auto& d : detectors) validate(d.spec);
  if (m.empty()) return {};

  const FockState& ref = m.branches().front().state;
  std::vector<std::size_t> detected;
  std::vector<std::size_t> owner;  // detector index of each detected mode
  for (std::size_t k = 0; k < detectors.size(); ++k) {
    for (std::size_t d = 0; d < k; ++d) {
      if (detectors[d].path == detectors[k].path) {
        throw std::invalid_argument("two detectors on path " +
                                    detectors[k].path);
      }
    }
    for (auto mode : ref.path_modes(detectors[k].path)) {
      detected.push_back(mode);
      owner.push_back(k);
    }
  }
  std::vector<ClickOutcome> wanted(detectors.size(), ClickOutcome::kAny);
  for (std::size_t k = 0; k < detectors.size(); ++k) {
    auto it = pattern.find(detectors[k].name);
    if (it != pattern.end()) wanted[k] = it->second;
  }

  std::vector<Branch> out;
  double total = 0.0;
  for (const auto& b : m.branches()) {
    if (b.state.modes() != ref.modes()) {
      throw std::invalid_argument("mixture branches have different registries");
    }
    for (auto& [sub, rest] : split_on_modes(b.state, detected)) {
      std::vector<int> photons(detectors.size(), 0);
      for (std::size_t k = 0; k < sub.size(); ++k) photons[owner[k]] += sub[k];
      double p = b.weight * rest.norm_squared();
      for (std::size_t k = 0; k < detectors.size() && p > 0.0; ++k) {
        const double none = no_click_weight(photons[k], detectors[k].spec);
        if (wanted[k] == ClickOutcome::kNoClick) p *= none;
        if (wanted[k] == ClickOutcome::kClick) p *= 1.0 - none;
      }
      if (p <= kZeroProbability) continue;
      total += p;
      std::string tag = b.tag + "|det:";
      for (auto n : sub) tag += static_cast<char>('0' + n);
      out.push_back({p, rest.normalized(), std::move(tag)});
    }
  }
  if (total <= kZeroProbability) return {};
  for (auto& b : out) b.weight /= total;
  return {total, Mixture(std::move(out)).sorted().merged()};
}

std::vector<ClickPattern> all_click_patterns(std::span<const Detector> detectors) {
  const std::size_t k = detectors.size();
  std::vector<ClickPattern> out;
  for (std::size_t bits = 0; bits < (std::size_t{1} << k); ++bits) {
    ClickPattern p;
    for (std::size_t d = 0; d < k; ++d) {
      const bool click = (bits >> (k - 1 - d)) & 1U;
      p[detectors[d].name] = click ? ClickOutcome::kClick : ClickOutcome::kNoClick;
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace hqasim
