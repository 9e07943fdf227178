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

// Centralized projected best-response ascending gradient dynamics (PBRAG):
//
//   w_i^q(t+1) = clamp01(w_i^q(t) + gamma_i^q * u_i^q(W(t)))
//
// with u the weight-game utility gradient. Every agent reads every other
// agent's weighted reward, so this is the full-information baseline for the
// distributed variant in dpbrag.hpp.

#ifndef TASKALLOC_PBRAG_HPP_
#define TASKALLOC_PBRAG_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "taskalloc/core_model.hpp"
#include "taskalloc/numeric.hpp"

namespace taskalloc {

/// One synchronous PBRAG step. All gradients are taken at the input state.
inline WeightMatrix pbrag_step(const WeightMatrix& w, const RewardMatrix& f,
                               const StepSizeMatrix& gamma) {
  detail::check_same_shape(w.agents(), w.tasks(), f.agents(), f.tasks());
  detail::check_same_shape(gamma.agents(), gamma.tasks(), f.agents(), f.tasks());
  Matrix next(w.agents(), w.tasks());
  for (std::size_t i = 0; i < w.agents(); ++i) {
    for (std::size_t q = 0; q < w.tasks(); ++q) {
      const double u = f(i, q) - competitor_max(i, q, w, f);
      next(i, q) = clamp01(w(i, q) + gamma(i, q) * u);
    }
  }
  return WeightMatrix(std::move(next));
}

/// True when one step moves no coordinate by more than tol.
inline bool is_equilibrium_weight(const WeightMatrix& w, const RewardMatrix& f,
                                  const StepSizeMatrix& gamma, double tol = 0.0) {
  return max_abs_diff(pbrag_step(w, f, gamma).matrix(), w.matrix()) <= tol;
}

struct Trajectory {
  std::vector<WeightMatrix> states;
  // Index of the first state that the step operator maps to itself.
  std::optional<std::size_t> converged_at;
  // Set when the run stopped because the change fell under the stall
  // tolerance without reaching an exact fixed point.
  bool stalled = false;

  const WeightMatrix& final_state() const { return states.back(); }
};

inline constexpr double kDefaultStallTolerance = 1e-12;

/// Iterates pbrag_step from w0. Stops at an exact fixed point, when the
/// sup-norm change drops to stall_tolerance, or after max_rounds step
/// evaluations. The state a fixed point maps to is not stored twice.
inline Trajectory run_pbrag(const WeightMatrix& w0, const RewardMatrix& f,
                            const StepSizeMatrix& gamma, std::size_t max_rounds,
                            double stall_tolerance = kDefaultStallTolerance) {
  if (max_rounds < 1) throw std::invalid_argument("run_pbrag: max_rounds must be >= 1");
  Trajectory out;
  out.states.push_back(w0);
  for (std::size_t t = 0; t < max_rounds; ++t) {
    WeightMatrix next = pbrag_step(out.states.back(), f, gamma);
    const double change = max_abs_diff(next.matrix(), out.states.back().matrix());
    if (change == 0.0) {
      out.converged_at = t;
      break;
    }
    out.states.push_back(std::move(next));
    if (change <= stall_tolerance) {
      out.stalled = true;
      break;
    }
  }
  return out;
}

/// Smallest dominance margin over tasks; every task must have a unique
/// dominating agent.
inline double dominance_margin(const RewardMatrix& f) {
  const auto report = check_assumptions(f);
  double delta = std::numeric_limits<double>::infinity();
  for (std::size_t q = 0; q < report.tasks.size(); ++q) {
    if (!report.tasks[q].unique) {
      throw std::domain_error("task " + std::to_string(q + 1) +
                              " has no unique dominating agent");
    }
    delta = std::min(delta, report.tasks[q].margin);
  }
  if (!(delta > 0.0)) throw std::domain_error("dominance margin must be positive");
  return delta;
}

/// Round count 2 * ceil(1 / (gamma_min * delta)) after which PBRAG sits at
/// its unique equilibrium, from any start.
inline std::uint64_t finite_time_bound(const RewardMatrix& f, const StepSizeMatrix& gamma) {
  detail::check_same_shape(gamma.agents(), gamma.tasks(), f.agents(), f.tasks());
  const double delta = dominance_margin(f);
  const double steps = std::ceil(1.0 / (gamma.min() * delta));
  if (!(steps < 4.0e18)) throw std::overflow_error("finite_time_bound: bound does not fit");
  return 2 * static_cast<std::uint64_t>(steps);
}

/// Uniform step size 2 / delta: gamma * delta = 2, so the bound is 2 rounds.
inline StepSizeMatrix two_step_gains(const RewardMatrix& f) {
  return StepSizeMatrix::uniform(f.agents(), f.tasks(), 2.0 / dominance_margin(f));
}

}  // namespace taskalloc

#endif  // TASKALLOC_PBRAG_HPP_
