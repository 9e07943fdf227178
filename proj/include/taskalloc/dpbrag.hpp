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

// Distributed PBRAG with periodic input injection.
//
// Each agent i keeps, per task q, a weight w, agreement registers M and S,
// and a held reward sample e. In round t it
//
//   w <- clamp01(w + gamma(t) * (z(t) - (M + S) / 2))
//   e <- switch(e, z(t+1))
//   M <- switch(max of neighbor M, e(t+1))
//   S <- switch(submax of neighbor S, own updated M and own e(t), e(t+1))
//
// where switch(x, y) takes y on rounds t+1 that are multiples of the period
// T and x otherwise. Between injections, M and S run the max/submax
// agreement from consensus_graph.hpp on the values injected at the start of
// the period, so (M + S) / 2 stands in for the competitor term of the
// centralized gradient. Neighbors exchange one (M, S) pair per task.

#ifndef TASKALLOC_DPBRAG_HPP_
#define TASKALLOC_DPBRAG_HPP_

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "taskalloc/consensus_graph.hpp"
#include "taskalloc/core_model.hpp"
#include "taskalloc/numeric.hpp"

namespace taskalloc {

/// Switching function: z on multiples of the period, m otherwise.
inline double sigma_sw(double m, double z, std::uint64_t t, std::uint64_t period) {
  if (period == 0) throw std::invalid_argument("sigma_sw: period must be >= 1");
  return t % period == 0 ? z : m;
}

/// Online reward samples z_i^q(t) converging to f_i(q).
class RewardSequence {
 public:
  struct DampedCosine {
    Matrix amplitude;  // a, in [0, f]
    Matrix frequency;  // b
    Matrix decay;      // c, >= 0
  };

  /// z(t) = f for every t.
  static RewardSequence constant(RewardMatrix limit) { return RewardSequence(std::move(limit)); }

  /// z(t) = f + a cos(b t) exp(-c t).
  static RewardSequence damped_cosine(RewardMatrix limit, DampedCosine params) {
    const auto& [a, b, c] = params;
    for (const Matrix* p : {&a, &b, &c}) {
      if (p->rows() != limit.agents() || p->cols() != limit.tasks()) {
        throw std::invalid_argument("damped_cosine: parameter size mismatch");
      }
    }
    for (std::size_t i = 0; i < limit.agents(); ++i) {
      for (std::size_t q = 0; q < limit.tasks(); ++q) {
        if (!(a(i, q) >= 0.0 && a(i, q) <= limit(i, q))) {
          throw std::invalid_argument("damped_cosine: amplitude must lie in [0, f]");
        }
        if (!std::isfinite(b(i, q)) || !(c(i, q) >= 0.0) || !std::isfinite(c(i, q))) {
          throw std::invalid_argument("damped_cosine: frequency must be finite, decay >= 0");
        }
      }
    }
    RewardSequence out(std::move(limit));
    out.damped_ = std::move(params);
    return out;
  }

  double operator()(std::size_t i, std::size_t q, std::uint64_t t) const {
    const double base = limit_(i, q);
    if (!damped_) return base;
    const double td = static_cast<double>(t);
    const double z = base + damped_->amplitude(i, q) * std::cos(damped_->frequency(i, q) * td) *
                                std::exp(-damped_->decay(i, q) * td);
    // a <= f keeps the sample nonnegative up to rounding.
    return std::max(0.0, z);
  }

  Matrix sample(std::uint64_t t) const {
    Matrix z(agents(), tasks());
    for (std::size_t i = 0; i < agents(); ++i)
      for (std::size_t q = 0; q < tasks(); ++q) z(i, q) = (*this)(i, q, t);
    return z;
  }

  const RewardMatrix& limit() const { return limit_; }
  bool is_constant() const { return !damped_.has_value(); }
  const std::optional<DampedCosine>& damped_parameters() const { return damped_; }
  std::size_t agents() const { return limit_.agents(); }
  std::size_t tasks() const { return limit_.tasks(); }

 private:
  explicit RewardSequence(RewardMatrix limit) : limit_(std::move(limit)) {}

  RewardMatrix limit_;
  std::optional<DampedCosine> damped_;
};

struct ConstantSchedule {
  Matrix alpha;
};

// alpha(k) = alpha0 / (k + 1) on the first 2d rounds of period k,
// beta(k) = beta0 * (k + 1) on the rest.
struct TwoPhaseSchedule {
  Matrix alpha0;
  Matrix beta0;
};

class StepSchedule {
 public:
  static StepSchedule constant(Matrix alpha) {
    check_positive(alpha);
    return StepSchedule(ConstantSchedule{std::move(alpha)});
  }

  static StepSchedule constant(std::size_t n, std::size_t m, double alpha) {
    return constant(Matrix(n, m, alpha));
  }

  static StepSchedule two_phase(Matrix alpha0, Matrix beta0) {
    check_positive(alpha0);
    check_positive(beta0);
    if (alpha0.rows() != beta0.rows() || alpha0.cols() != beta0.cols()) {
      throw std::invalid_argument("StepSchedule: alpha0/beta0 size mismatch");
    }
    return StepSchedule(TwoPhaseSchedule{std::move(alpha0), std::move(beta0)});
  }

  static StepSchedule two_phase(std::size_t n, std::size_t m, double alpha0 = 1.0,
                                double beta0 = 1.0) {
    return two_phase(Matrix(n, m, alpha0), Matrix(n, m, beta0));
  }

  bool is_constant() const { return std::holds_alternative<ConstantSchedule>(rule_); }
  const std::variant<ConstantSchedule, TwoPhaseSchedule>& rule() const { return rule_; }

  std::size_t agents() const { return base().rows(); }
  std::size_t tasks() const { return base().cols(); }

  /// Step size gamma_i^q(t) for period length T and diameter surrogate d.
  double gain(std::size_t i, std::size_t q, std::uint64_t t, std::uint64_t period,
              std::uint64_t d) const {
    if (const auto* c = std::get_if<ConstantSchedule>(&rule_)) return c->alpha(i, q);
    const auto& tp = std::get<TwoPhaseSchedule>(rule_);
    const double k = static_cast<double>(t / period);
    if (t % period < 2 * d) return tp.alpha0(i, q) / (k + 1.0);
    return tp.beta0(i, q) * (k + 1.0);
  }

 private:
  explicit StepSchedule(std::variant<ConstantSchedule, TwoPhaseSchedule> rule)
      : rule_(std::move(rule)) {}

  const Matrix& base() const {
    if (const auto* c = std::get_if<ConstantSchedule>(&rule_)) return c->alpha;
    return std::get<TwoPhaseSchedule>(rule_).alpha0;
  }

  static void check_positive(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) throw std::invalid_argument("StepSchedule: empty matrix");
    for (double v : m.values()) {
      if (!std::isfinite(v) || v <= 0.0) {
        throw std::invalid_argument("StepSchedule: step sizes must be finite and > 0");
      }
    }
  }

  std::variant<ConstantSchedule, TwoPhaseSchedule> rule_;
};

struct DpbragParams {
  std::uint64_t period = 0;         // T
  double epsilon = 0.5;             // bound on non-dominating weights
  double nu = 0.1;                  // discount on the max/submax half-gap
  std::uint64_t diameter = 1;       // d, or any upper bound such as n
  StepSchedule schedule = StepSchedule::constant(1, 1, 1.0);

  void validate(std::size_t n, std::size_t m) const {
    if (period < 2) throw std::invalid_argument("DpbragParams: period must be >= 2");
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
      throw std::invalid_argument("DpbragParams: epsilon must lie in (0, 1)");
    }
    if (!(nu > 0.0 && nu < 1.0)) throw std::invalid_argument("DpbragParams: nu must lie in (0, 1)");
    if (schedule.agents() != n || schedule.tasks() != m) {
      throw std::invalid_argument("DpbragParams: schedule size mismatch");
    }
    if (!schedule.is_constant() && period <= 2 * diameter) {
      throw std::invalid_argument("DpbragParams: two-phase schedule needs period > 2 * diameter");
    }
  }
};

/// Constant-step parameters that satisfy the asymptotic guarantee: the
/// largest admissible alpha per entry and the smallest admissible period.
struct ConstantParamDerivation {
  Matrix alpha;                 // eps / (2 d spread_q)
  double alpha_min = 0.0;
  std::vector<double> spread;   // max - min per task
  std::vector<double> half_gap; // (max - submax) / 2 per task
  double mu = 0.0;              // (1 - nu) * min half_gap
  double period_lower = 0.0;    // 2d + 1 / (alpha mu) + 1; the period must exceed it
  DpbragParams params;
};

inline constexpr std::uint64_t kDefaultPeriodCap = 10'000'000;

inline ConstantParamDerivation derive_constant_params(const RewardMatrix& f, std::uint64_t d,
                                                      double epsilon, double nu,
                                                      std::uint64_t period_cap = kDefaultPeriodCap) {
  if (d == 0) throw std::invalid_argument("derive_constant_params: diameter surrogate must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("derive_constant_params: epsilon must lie in (0, 1)");
  }
  if (!(nu > 0.0 && nu < 1.0)) {
    throw std::invalid_argument("derive_constant_params: nu must lie in (0, 1)");
  }
  const auto report = check_assumptions(f);
  ConstantParamDerivation out;
  out.alpha = Matrix(f.agents(), f.tasks());
  double min_half_gap = std::numeric_limits<double>::infinity();
  for (std::size_t q = 0; q < f.tasks(); ++q) {
    const auto& t = report.tasks[q];
    if (!(t.spread > 0.0)) {
      throw std::domain_error("derive_constant_params: task " + std::to_string(q + 1) +
                              " has zero spread (every agent dominates)");
    }
    if (!(t.half_gap > 0.0) || !t.unique) {
      throw std::domain_error("derive_constant_params: task " + std::to_string(q + 1) +
                              " has no unique dominating agent (zero max/submax gap)");
    }
    out.spread.push_back(t.spread);
    out.half_gap.push_back(t.half_gap);
    min_half_gap = std::min(min_half_gap, t.half_gap);
    const double a = epsilon / (2.0 * static_cast<double>(d) * t.spread);
    for (std::size_t i = 0; i < f.agents(); ++i) out.alpha(i, q) = a;
  }
  out.alpha_min = *std::min_element(out.alpha.values().begin(), out.alpha.values().end());
  out.mu = (1.0 - nu) * min_half_gap;
  out.period_lower = 2.0 * static_cast<double>(d) + 1.0 / (out.alpha_min * out.mu) + 1.0;
  if (!(out.period_lower < static_cast<double>(period_cap))) {
    throw std::domain_error("derive_constant_params: required period exceeds cap " +
                            std::to_string(period_cap));
  }
  out.params.period = static_cast<std::uint64_t>(std::floor(out.period_lower)) + 1;
  out.params.epsilon = epsilon;
  out.params.nu = nu;
  out.params.diameter = d;
  out.params.schedule = StepSchedule::constant(out.alpha);
  return out;
}

/// Registers of every agent for every task, as n x m matrices.
struct DpbragState {
  std::uint64_t t = 0;
  Matrix w;
  Matrix max_estimate;     // M
  Matrix submax_estimate;  // S
  Matrix held;             // e
  Matrix sample;           // z(t)

  /// Round 0 is an injection round: M = S = e = z(0).
  static DpbragState initial(const WeightMatrix& w0, const RewardSequence& seq) {
    detail::check_same_shape(w0.agents(), w0.tasks(), seq.agents(), seq.tasks());
    DpbragState s;
    s.w = w0.matrix();
    s.sample = seq.sample(0);
    s.max_estimate = s.sample;
    s.submax_estimate = s.sample;
    s.held = s.sample;
    return s;
  }

  WeightMatrix weights() const { return WeightMatrix(w); }

  friend bool operator==(const DpbragState&, const DpbragState&) = default;
};

/// One synchronous d-PBRAG round; every read comes from the round-t state.
inline DpbragState dpbrag_round(const DpbragState& s, const DirectedGraph& g,
                                const RewardSequence& seq, const DpbragParams& params) {
  const std::size_t n = seq.agents();
  const std::size_t m = seq.tasks();
  if (g.nodes() != n) throw std::invalid_argument("dpbrag_round: graph size mismatch");
  if (s.w.rows() != n || s.w.cols() != m) throw std::invalid_argument("dpbrag_round: state size mismatch");
  if (!g.is_strongly_connected()) {
    throw std::domain_error("dpbrag_round: graph is not strongly connected");
  }
  const std::uint64_t next_t = s.t + 1;
  const bool inject = next_t % params.period == 0;

  DpbragState out;
  out.t = next_t;
  out.w = Matrix(n, m);
  out.max_estimate = Matrix(n, m);
  out.submax_estimate = Matrix(n, m);
  out.held = Matrix(n, m);
  out.sample = seq.sample(next_t);

  std::vector<double> pool;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& nbrs = g.in_neighbors(i);
    for (std::size_t q = 0; q < m; ++q) {
      const double gamma = params.schedule.gain(i, q, s.t, params.period, params.diameter);
      const double surrogate =
          s.sample(i, q) - 0.5 * (s.max_estimate(i, q) + s.submax_estimate(i, q));
      out.w(i, q) = clamp01(s.w(i, q) + gamma * surrogate);

      out.held(i, q) = sigma_sw(s.held(i, q), out.sample(i, q), next_t, params.period);

      double best = s.max_estimate(i, q);
      pool.assign({s.submax_estimate(i, q), s.held(i, q)});
      for (std::size_t j : nbrs) {
        best = std::max(best, s.max_estimate(j, q));
        pool.push_back(s.submax_estimate(j, q));
      }
      pool.push_back(best);  // pre-switch max, as in agreement_round
      out.max_estimate(i, q) = inject ? out.held(i, q) : best;
      out.submax_estimate(i, q) = inject ? out.held(i, q) : submax(pool);
    }
  }
  return out;
}

struct DpbragOptions {
  bool record_states = false;
  // Called with every state, including the initial one.
  std::function<void(const DpbragState&)> observer;
};

struct DpbragRun {
  std::vector<DpbragState> states;  // filled when record_states is set
  DpbragState final_state;
  std::uint64_t rounds = 0;

  // (t, C(W(t))) at t = 0 and at every round where the allocation changed.
  std::vector<std::pair<std::uint64_t, AllocationProfile>> allocation_changes;

  // First round from which, through the end of the run, every dominating
  // agent has weight exactly 1 and every other agent has weight <= epsilon.
  std::optional<std::uint64_t> tau;
  // First round at which every dominating agent has weight exactly 1.
  std::optional<std::uint64_t> first_dominating_hit;
  double peak_non_dominating = 0.0;

  std::uint64_t messages_per_round = 0;  // one per arc, carrying m (M, S) pairs
  std::uint64_t values_per_round = 0;    // 2 * m * |E|
  std::uint64_t total_messages = 0;

  bool within_hypotheses = false;

  const AllocationProfile& final_allocation() const { return allocation_changes.back().second; }
  std::uint64_t allocation_stable_since() const { return allocation_changes.back().first; }
};

/// Whether the instance and parameters meet the hypotheses of the
/// convergence guarantees: a unique dominating agent per task and, for a
/// constant schedule, step sizes and period inside their bounds.
inline bool dpbrag_hypotheses_hold(const RewardMatrix& f, const DpbragParams& params) {
  const auto report = check_assumptions(f);
  if (!report.nontrivial() || !report.unique_dominating()) return false;
  const double d = static_cast<double>(params.diameter);
  if (const auto* c = std::get_if<ConstantSchedule>(&params.schedule.rule())) {
    double alpha_min = std::numeric_limits<double>::infinity();
    double min_half_gap = std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q < f.tasks(); ++q) {
      min_half_gap = std::min(min_half_gap, report.tasks[q].half_gap);
      for (std::size_t i = 0; i < f.agents(); ++i) {
        if (c->alpha(i, q) > params.epsilon / (2.0 * d * report.tasks[q].spread)) return false;
        alpha_min = std::min(alpha_min, c->alpha(i, q));
      }
    }
    const double mu = (1.0 - params.nu) * min_half_gap;
    return static_cast<double>(params.period) > 2.0 * d + 1.0 / (alpha_min * mu) + 1.0;
  }
  return static_cast<double>(params.period) > 2.0 * d + 1.0;
}

inline DpbragRun run_dpbrag(const WeightMatrix& w0, const DirectedGraph& g,
                            const RewardSequence& seq, const DpbragParams& params,
                            std::uint64_t max_rounds, const DpbragOptions& options = {}) {
  const std::size_t n = seq.agents();
  const std::size_t m = seq.tasks();
  params.validate(n, m);
  if (g.nodes() != n) throw std::invalid_argument("run_dpbrag: graph size mismatch");
  if (!g.is_strongly_connected()) {
    throw std::domain_error("run_dpbrag: graph is not strongly connected");
  }
  const RewardMatrix& f = seq.limit();

  std::vector<std::vector<bool>> dominating(n, std::vector<bool>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t q = 0; q < m; ++q) dominating[i][q] = is_dominating(i, q, f);

  DpbragRun run;
  run.within_hypotheses = dpbrag_hypotheses_hold(f, params);
  run.messages_per_round = g.arcs().size();
  run.values_per_round = 2 * m * g.arcs().size();

  std::optional<std::uint64_t> last_failure;
  auto observe = [&](const DpbragState& s) {
    bool all_dom_one = true;
    bool others_small = true;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t q = 0; q < m; ++q) {
        if (dominating[i][q]) {
          all_dom_one = all_dom_one && s.w(i, q) == 1.0;
        } else {
          others_small = others_small && s.w(i, q) <= params.epsilon;
          run.peak_non_dominating = std::max(run.peak_non_dominating, s.w(i, q));
        }
      }
    }
    if (all_dom_one && !run.first_dominating_hit) run.first_dominating_hit = s.t;
    if (!(all_dom_one && others_small)) last_failure = s.t;

    auto alloc = translated_support(WeightMatrix(s.w));
    if (run.allocation_changes.empty() || run.allocation_changes.back().second != alloc) {
      run.allocation_changes.emplace_back(s.t, std::move(alloc));
    }
    if (options.record_states) run.states.push_back(s);
    if (options.observer) options.observer(s);
  };

  DpbragState state = DpbragState::initial(w0, seq);
  observe(state);
  for (std::uint64_t r = 0; r < max_rounds; ++r) {
    state = dpbrag_round(state, g, seq, params);
    run.total_messages += run.messages_per_round;
    observe(state);
  }
  run.rounds = max_rounds;
  if (!last_failure) {
    run.tau = 0;
  } else if (*last_failure < state.t) {
    run.tau = *last_failure + 1;
  }
  run.final_state = std::move(state);
  return run;
}

}  // namespace taskalloc

#endif  // TASKALLOC_DPBRAG_HPP_
