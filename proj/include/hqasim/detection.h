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

#ifndef HQASIM_DETECTION_H_
#define HQASIM_DETECTION_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "hqasim/elements.h"

namespace hqasim {

struct DetectorSpec {
  double efficiency = 1.0;
  double dark_click_prob = 0.0;
};

/// A logical threshold detector watching every internal mode of one path.
struct Detector {
  std::string name;
  std::string path;
  DetectorSpec spec;
};

enum class ClickOutcome { kClick, kNoClick, kAny };

using ClickPattern = std::map<std::string, ClickOutcome>;

/// (1 − η)^n (1 − dark).
double no_click_weight(int photons, const DetectorSpec& spec);

struct Measurement {
  double probability = 0.0;
  /// Normalized state of the undetected modes; empty when probability is 0.
  Mixture conditional;
};

/// Threshold measurement of the detected paths followed by discarding them.
/// Detectors absent from `pattern` are treated as kAny.
Measurement measure(const Mixture& m, std::span<const Detector> detectors,
                    const ClickPattern& pattern);

/// All 2^k click/no-click patterns over `detectors`, in a fixed order
/// (first detector is the most significant bit, no-click before click).
std::vector<ClickPattern> all_click_patterns(std::span<const Detector> detectors);

}  // namespace hqasim

#endif  // HQASIM_DETECTION_H_
