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

// Problem data for the task allocation games: allocation profiles,
// partitions, the partition-game and weight-game utilities, and the
// dominating-agent structure of a reward matrix.
//
// Agents and tasks are 0-based throughout the library. Text output
// (to_string, CSV, reports) is 1-based.

#ifndef TASKALLOC_CORE_MODEL_HPP_
#define TASKALLOC_CORE_MODEL_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "taskalloc/matrix.hpp"
#include "taskalloc/numeric.hpp"

namespace taskalloc {

namespace detail {

inline void check_agent(std::size_t i, std::size_t n) {
  if (i >= n) throw std::out_of_range("agent index " + std::to_string(i) + " out of range");
}

inline void check_task(std::size_t q, std::size_t m) {
  if (q >= m) throw std::out_of_range("task index " + std::to_string(q) + " out of range");
}

inline void check_same_shape(std::size_t n1, std::size_t m1, std::size_t n2, std::size_t m2) {
  if (n1 != n2 || m1 != m2) throw std::invalid_argument("size mismatch between game data");
}

}  // namespace detail

/// An ordered n-tuple of task subsets (V_1, ..., V_n). Subsets may overlap
/// and need not cover every task. Each subset is kept sorted and unique.
class AllocationProfile {
 public:
  AllocationProfile() = default;

  AllocationProfile(std::size_t tasks, std::vector<std::vector<std::size_t>> subsets)
      : tasks_(tasks), subsets_(std::move(subsets)) {
    if (subsets_.empty()) throw std::invalid_argument("AllocationProfile: needs at least one agent");
    if (tasks_ == 0) throw std::invalid_argument("AllocationProfile: needs at least one task");
    for (auto& s : subsets_) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      for (std::size_t q : s) detail::check_task(q, tasks_);
    }
  }

  static AllocationProfile empty(std::size_t agents, std::size_t tasks) {
    return AllocationProfile(tasks, std::vector<std::vector<std::size_t>>(agents));
  }

  std::size_t agents() const { return subsets_.size(); }
  std::size_t tasks() const { return tasks_; }
  const std::vector<std::size_t>& subset(std::size_t i) const { return subsets_.at(i); }
  const std::vector<std::vector<std::size_t>>& subsets() const { return subsets_; }

  bool contains(std::size_t i, std::size_t q) const {
    const auto& s = subsets_.at(i);
    return std::binary_search(s.begin(), s.end(), q);
  }

  /// Agents whose subset contains q.
  std::vector<std::size_t> holders(std::size_t q) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < subsets_.size(); ++i)
      if (contains(i, q)) out.push_back(i);
    return out;
  }

  /// True when the subsets are pairwise disjoint and cover every task.
  bool is_partition() const {
    std::vector<int> count(tasks_, 0);
    for (const auto& s : subsets_)
      for (std::size_t q : s) ++count[q];
    return std::all_of(count.begin(), count.end(), [](int c) { return c == 1; });
  }

  /// Renders as "({1,2},{})" with 1-based task ids.
  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < subsets_.size(); ++i) {
      if (i) os << ',';
      os << '{';
      for (std::size_t k = 0; k < subsets_[i].size(); ++k) {
        if (k) os << ',';
        os << subsets_[i][k] + 1;
      }
      os << '}';
    }
    os << ')';
    return os.str();
  }

  friend bool operator==(const AllocationProfile&, const AllocationProfile&) = default;
  friend auto operator<=>(const AllocationProfile&, const AllocationProfile&) = default;

 private:
  std::size_t tasks_ = 0;
  std::vector<std::vector<std::size_t>> subsets_;
};

/// An allocation profile in which every task is held by exactly one agent.
class Partition {
 public:
  explicit Partition(AllocationProfile profile) : profile_(std::move(profile)) {
    if (!profile_.is_partition()) {
      throw std::invalid_argument("Partition: subsets must be disjoint and cover all tasks, got " +
                                  profile_.to_string());
    }
  }

  /// Builds the partition that gives task q to owner[q].
  static Partition from_owners(std::size_t agents, const std::vector<std::size_t>& owner) {
    std::vector<std::vector<std::size_t>> subsets(agents);
    for (std::size_t q = 0; q < owner.size(); ++q) {
      detail::check_agent(owner[q], agents);
      subsets[owner[q]].push_back(q);
    }
    return Partition(AllocationProfile(owner.size(), std::move(subsets)));
  }

  const AllocationProfile& profile() const { return profile_; }
  std::size_t agents() const { return profile_.agents(); }
  std::size_t tasks() const { return profile_.tasks(); }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  AllocationProfile profile_;
};

/// Total value sum_i sum_{q in V_i} f_i(q) of a partition.
inline double objective(const Partition& p, const RewardMatrix& f) {
  detail::check_same_shape(p.agents(), p.tasks(), f.agents(), f.tasks());
  double total = 0.0;
  for (std::size_t i = 0; i < p.agents(); ++i)
    for (std::size_t q : p.profile().subset(i)) total += f(i, q);
  return total;
}

/// Partition-game utility H_i: each held task pays f_i(q) minus the best
/// value among the other agents that also hold q (0 if none does).
inline double partition_utility(std::size_t i, const AllocationProfile& a, const RewardMatrix& f) {
  detail::check_same_shape(a.agents(), a.tasks(), f.agents(), f.tasks());
  detail::check_agent(i, f.agents());
  double total = 0.0;
  for (std::size_t q : a.subset(i)) {
    double rival = 0.0;
    for (std::size_t j = 0; j < a.agents(); ++j)
      if (j != i && a.contains(j, q)) rival = std::max(rival, f(j, q));
    total += f(i, q) - rival;
  }
  return total;
}

/// max_{j != i} f_j(q) w_j^q, or 0 when there is no other agent.
inline double competitor_max(std::size_t i, std::size_t q, const WeightMatrix& w,
                             const RewardMatrix& f) {
  double rival = 0.0;
  for (std::size_t j = 0; j < f.agents(); ++j)
    if (j != i) rival = std::max(rival, f(j, q) * w(j, q));
  return rival;
}

/// Weight-game utility U_i.
inline double weight_utility(std::size_t i, const WeightMatrix& w, const RewardMatrix& f) {
  detail::check_same_shape(w.agents(), w.tasks(), f.agents(), f.tasks());
  detail::check_agent(i, f.agents());
  double total = 0.0;
  for (std::size_t q = 0; q < f.tasks(); ++q) {
    total += f(i, q) * w(i, q) - competitor_max(i, q, w, f) * w(i, q);
  }
  return total;
}

/// dU_i / dw_i^q = f_i(q) - max_{j != i} f_j(q) w_j^q. U_i is affine in w_i^q,
/// so this is also the exact slope between w_i^q = 0 and w_i^q = 1.
inline double utility_gradient(std::size_t i, std::size_t q, const WeightMatrix& w,
                               const RewardMatrix& f) {
  detail::check_same_shape(w.agents(), w.tasks(), f.agents(), f.tasks());
  detail::check_agent(i, f.agents());
  detail::check_task(q, f.tasks());
  return f(i, q) - competitor_max(i, q, w, f);
}

/// Agents attaining max_i f_i(q). Never empty; ties are all kept.
inline std::vector<std::size_t> dominating_agents(std::size_t q, const RewardMatrix& f) {
  detail::check_task(q, f.tasks());
  double best = f(0, q);
  for (std::size_t i = 1; i < f.agents(); ++i) best = std::max(best, f(i, q));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.agents(); ++i)
    if (f(i, q) == best) out.push_back(i);
  return out;
}

inline bool is_dominating(std::size_t i, std::size_t q, const RewardMatrix& f) {
  for (std::size_t j = 0; j < f.agents(); ++j)
    if (f(j, q) > f(i, q)) return false;
  return true;
}

/// Translated support C(W): agent i gets {q : w_i^q = 1}. With a positive
/// tolerance, any weight within tol of 1 counts.
inline AllocationProfile translated_support(const WeightMatrix& w, double tol = 0.0) {
  std::vector<std::vector<std::size_t>> subsets(w.agents());
  for (std::size_t i = 0; i < w.agents(); ++i)
    for (std::size_t q = 0; q < w.tasks(); ++q)
      if (1.0 - w(i, q) <= tol) subsets[i].push_back(q);
  return AllocationProfile(w.tasks(), std::move(subsets));
}

/// Binary weight matrix with w_i^q = 1 exactly when q is in V_i.
inline WeightMatrix indicator_weights(const AllocationProfile& a) {
  Matrix m(a.agents(), a.tasks(), 0.0);
  for (std::size_t i = 0; i < a.agents(); ++i)
    for (std::size_t q : a.subset(i)) m(i, q) = 1.0;
  return WeightMatrix(std::move(m));
}

struct TaskAssumptions {
  std::vector<std::size_t> dominating;
  bool all_dominating = false;  // every agent dominates: non-trivial assignment fails
  bool unique = false;
  double spread = 0.0;          // max_i f_i(q) - min_i f_i(q)
  double half_gap = 0.0;        // (max - submax) / 2 over the column
  double margin = 0.0;          // f_{i*}(q) - max_{j != i*} f_j(q); 0 when not unique
};

struct AssumptionReport {
  std::vector<TaskAssumptions> tasks;

  bool nontrivial() const {
    return std::none_of(tasks.begin(), tasks.end(), [](const auto& t) { return t.all_dominating; });
  }
  bool unique_dominating() const {
    return std::all_of(tasks.begin(), tasks.end(), [](const auto& t) { return t.unique; });
  }
  std::vector<std::size_t> violating_tasks() const {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < tasks.size(); ++q)
      if (tasks[q].all_dominating) out.push_back(q);
    return out;
  }
};

/// Per-task dominance structure and the gap quantities used by the
/// step-size and period bounds.
inline AssumptionReport check_assumptions(const RewardMatrix& f) {
  AssumptionReport report;
  report.tasks.reserve(f.tasks());
  for (std::size_t q = 0; q < f.tasks(); ++q) {
    TaskAssumptions t;
    t.dominating = dominating_agents(q, f);
    t.all_dominating = t.dominating.size() == f.agents();
    t.unique = t.dominating.size() == 1;
    const auto col = f.matrix().column(q);
    const double hi = *std::max_element(col.begin(), col.end());
    const double lo = *std::min_element(col.begin(), col.end());
    t.spread = hi - lo;
    t.half_gap = 0.5 * (hi - submax(col));
    if (t.unique) {
      const std::size_t star = t.dominating.front();
      double rival = 0.0;
      for (std::size_t j = 0; j < f.agents(); ++j)
        if (j != star) rival = std::max(rival, f(j, q));
      t.margin = f(star, q) - rival;
    }
    report.tasks.push_back(std::move(t));
  }
  return report;
}

}  // namespace taskalloc

#endif  // TASKALLOC_CORE_MODEL_HPP_
