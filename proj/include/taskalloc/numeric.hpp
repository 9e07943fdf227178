// Copyright 2026 The taskalloc Authors
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

#ifndef TASKALLOC_NUMERIC_HPP_
#define TASKALLOC_NUMERIC_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

namespace taskalloc {

// Projection onto [0, 1].
inline double clamp01(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("clamp01: non-finite input");
  }
  return std::max(0.0, std::min(x, 1.0));
}

// Largest value strictly below the maximum. When every value equals the
// maximum there is no such value and the maximum itself is returned.
inline double submax(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("submax: empty input");
  }
  const double top = *std::max_element(values.begin(), values.end());
  bool found = false;
  double second = top;
  for (double v : values) {
    if (v != top && (!found || v > second)) {
      second = v;
      found = true;
    }
  }
  return second;
}

inline double submax(std::initializer_list<double> values) {
  return submax(std::span<const double>(values.begin(), values.size()));
}

}  // namespace taskalloc

#endif  // TASKALLOC_NUMERIC_HPP_
