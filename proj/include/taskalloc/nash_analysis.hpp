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

// Nash-equilibrium membership for the partition and weight games, checked
// through their dominating-agent characterizations, plus exhaustive
// enumeration of the optimal partitions.

#ifndef TASKALLOC_NASH_ANALYSIS_HPP_
#define TASKALLOC_NASH_ANALYSIS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "taskalloc/core_model.hpp"

namespace taskalloc {

enum class NeProperty {
  kDominatingHolds,   // some dominating agent holds the task (or has weight 1)
  kOthersAbstain,     // non-dominating agents do not hold it (or have weight 0)
};

struct NeViolation {
  std::optional<std::size_t> agent;  // absent for kDominatingHolds
  std::size_t task = 0;
  NeProperty property = NeProperty::kDominatingHolds;

  std::string to_string() const {
    std::string out = property == NeProperty::kDominatingHolds
                          ? "task " + std::to_string(task + 1) + ": no dominating agent holds it"
                          : "task " + std::to_string(task + 1) + ": non-dominating agent " +
                                std::to_string(*agent + 1) + " holds it";
    return out;
  }

  friend bool operator==(const NeViolation&, const NeViolation&) = default;
};

struct NeReport {
  bool is_ne = true;
  std::vector<NeViolation> violations;
};

class EnumerationCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Partition-game NE test: every task is held by at least one dominating
/// agent and by no non-dominating agent.
inline NeReport is_ne_partition_game(const AllocationProfile& a, const RewardMatrix& f) {
  detail::check_same_shape(a.agents(), a.tasks(), f.agents(), f.tasks());
  NeReport report;
  for (std::size_t q = 0; q < f.tasks(); ++q) {
    bool held = false;
    for (std::size_t i = 0; i < f.agents(); ++i) {
      if (!a.contains(i, q)) continue;
      if (is_dominating(i, q, f)) {
        held = true;
      } else {
        report.violations.push_back({i, q, NeProperty::kOthersAbstain});
      }
    }
    if (!held) report.violations.push_back({std::nullopt, q, NeProperty::kDominatingHolds});
  }
  report.is_ne = report.violations.empty();
  return report;
}

/// Weight-game NE test: per task, some dominating agent sits at 1 and every
/// non-dominating agent sits at 0, both within tol. Weights of the other
/// dominating agents are unconstrained.
inline NeReport is_ne_weight_game(const WeightMatrix& w, const RewardMatrix& f, double tol = 0.0) {
  detail::check_same_shape(w.agents(), w.tasks(), f.agents(), f.tasks());
  if (!(tol >= 0.0)) throw std::invalid_argument("is_ne_weight_game: tol must be >= 0");
  NeReport report;
  for (std::size_t q = 0; q < f.tasks(); ++q) {
    bool saturated = false;
    for (std::size_t i = 0; i < f.agents(); ++i) {
      if (is_dominating(i, q, f)) {
        if (std::abs(w(i, q) - 1.0) <= tol) saturated = true;
      } else if (std::abs(w(i, q)) > tol) {
        report.violations.push_back({i, q, NeProperty::kOthersAbstain});
      }
    }
    if (!saturated) report.violations.push_back({std::nullopt, q, NeProperty::kDominatingHolds});
  }
  report.is_ne = report.violations.empty();
  return report;
}

struct OptimalSet {
  std::vector<Partition> partitions;  // sorted, duplicate-free
  double optimal_value = 0.0;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// All maximizers of the partition objective. Tasks decouple, so the optimal
/// set is the Cartesian product of the per-task dominating sets. Refuses
/// instances whose full search space n^m exceeds cap.
inline OptimalSet enumerate_optimal_partitions(const RewardMatrix& f,
                                               std::uint64_t cap = kDefaultEnumerationCap) {
  const std::size_t n = f.agents();
  const std::size_t m = f.tasks();
  std::uint64_t space = 1;
  for (std::size_t q = 0; q < m; ++q) {
    if (space > cap / n) {
      throw EnumerationCapExceeded("enumerate_optimal_partitions: n^m = " + std::to_string(n) + "^" +
                                   std::to_string(m) + " exceeds cap " + std::to_string(cap));
    }
    space *= n;
  }

  std::vector<std::vector<std::size_t>> choices(m);
  OptimalSet out;
  for (std::size_t q = 0; q < m; ++q) {
    choices[q] = dominating_agents(q, f);
    out.optimal_value += f(choices[q].front(), q);
  }

  // Odometer over the product of dominating sets.
  std::vector<std::size_t> digit(m, 0);
  std::vector<std::size_t> owner(m);
  while (true) {
    for (std::size_t q = 0; q < m; ++q) owner[q] = choices[q][digit[q]];
    out.partitions.push_back(Partition::from_owners(n, owner));
    std::size_t q = 0;
    while (q < m && ++digit[q] == choices[q].size()) digit[q++] = 0;
    if (q == m) break;
  }
  std::sort(out.partitions.begin(), out.partitions.end());
  out.partitions.erase(std::unique(out.partitions.begin(), out.partitions.end()),
                       out.partitions.end());
  return out;
}

/// Checks that every optimal partition is a partition-game NE, i.e. lies in
/// the translated support of the weight-game equilibria.
inline bool verify_inclusion(const RewardMatrix& f, std::uint64_t cap = kDefaultEnumerationCap) {
  const auto optimal = enumerate_optimal_partitions(f, cap);
  for (const auto& p : optimal.partitions) {
    if (!is_ne_partition_game(p.profile(), f).is_ne) return false;
    if (!is_ne_weight_game(indicator_weights(p.profile()), f).is_ne) return false;
  }
  return true;
}

/// The single weight-game equilibrium when every task has a unique
/// dominating agent; absent otherwise.
inline std::optional<WeightMatrix> unique_ne(const RewardMatrix& f) {
  Matrix w(f.agents(), f.tasks(), 0.0);
  for (std::size_t q = 0; q < f.tasks(); ++q) {
    const auto dom = dominating_agents(q, f);
    if (dom.size() != 1) return std::nullopt;
    w(dom.front(), q) = 1.0;
  }
  return WeightMatrix(std::move(w));
}

}  // namespace taskalloc

#endif  // TASKALLOC_NASH_ANALYSIS_HPP_
