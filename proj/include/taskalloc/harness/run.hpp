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

// Scenario execution, run reports, and replay from a trajectory CSV.

#ifndef TASKALLOC_HARNESS_RUN_HPP_
#define TASKALLOC_HARNESS_RUN_HPP_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "taskalloc/core_model.hpp"
#include "taskalloc/dpbrag.hpp"
#include "taskalloc/harness/csv.hpp"
#include "taskalloc/harness/scenario.hpp"
#include "taskalloc/nash_analysis.hpp"
#include "taskalloc/pbrag.hpp"

namespace taskalloc::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBudget = 1;
inline constexpr int kExitInvalid = 2;

struct RunReport {
  std::string scenario;
  Algorithm algorithm = Algorithm::kNone;
  std::size_t agents = 0;
  std::size_t tasks = 0;
  std::uint64_t rounds = 0;
  bool converged = false;

  bool unique_dominating = false;
  std::vector<std::size_t> trivial_tasks;  // every agent dominates

  std::optional<OptimalSet> optimal;        // absent above the enumeration cap
  std::optional<bool> optimal_in_ne;

  std::optional<Matrix> final_weights;
  std::optional<AllocationProfile> final_allocation;
  std::optional<NeReport> partition_ne;     // on C(W)
  std::optional<NeReport> weight_ne;        // on W, at the scenario tolerance
  double tolerance = 0.0;
  double support_tolerance = 0.0;

  // pbrag
  std::optional<std::uint64_t> converged_at;
  bool stalled = false;
  std::optional<double> dominance_margin;
  std::optional<double> gamma_min;
  std::optional<std::uint64_t> finite_time_bound;

  // dpbrag
  std::optional<std::uint64_t> period;
  std::optional<std::uint64_t> diameter;
  double epsilon = 0.0;
  double nu = 0.0;
  bool within_hypotheses = false;
  std::optional<ConstantParamDerivation> derivation;
  std::optional<std::uint64_t> tau;
  std::optional<std::uint64_t> first_dominating_hit;
  double peak_non_dominating = 0.0;
  std::optional<std::uint64_t> allocation_stable_since;
  std::uint64_t messages_per_round = 0;
  std::uint64_t values_per_round = 0;
  std::uint64_t total_messages = 0;

  int exit_code() const { return converged ? kExitOk : kExitBudget; }
};

inline const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kPbrag:
      return "pbrag";
    case Algorithm::kDpbrag:
      return "dpbrag";
    case Algorithm::kNone:
      break;
  }
  return "none";
}

inline json ne_json(const NeReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) v.push_back(x.to_string());
  return {{"is_ne", r.is_ne}, {"violations", v}};
}

inline json allocation_json(const AllocationProfile& a) {
  json subsets = json::array();
  for (const auto& s : a.subsets()) {
    json ids = json::array();
    for (std::size_t q : s) ids.push_back(q + 1);
    subsets.push_back(ids);
  }
  return {{"profile", a.to_string()}, {"subsets", subsets}, {"is_partition", a.is_partition()}};
}

template <class T>
json optional_json(const std::optional<T>& x) {
  return x ? json(*x) : json(nullptr);
}

inline json to_json(const RunReport& r) {
  json j;
  j["scenario"] = r.scenario;
  j["algorithm"] = algorithm_name(r.algorithm);
  j["agents"] = r.agents;
  j["tasks"] = r.tasks;
  j["converged"] = r.converged;
  j["rounds"] = r.rounds;
  j["assumptions"] = {{"unique_dominating", r.unique_dominating}, {"trivial_tasks", json::array()}};
  for (std::size_t q : r.trivial_tasks) j["assumptions"]["trivial_tasks"].push_back(q + 1);

  if (r.optimal) {
    json parts = json::array();
    for (const auto& p : r.optimal->partitions) parts.push_back(p.profile().to_string());
    j["optimal"] = {{"value", r.optimal->optimal_value},
                    {"partitions", parts},
                    {"all_in_ne", optional_json(r.optimal_in_ne)}};
  } else {
    j["optimal"] = nullptr;
  }

  if (r.final_allocation) {
    j["final_allocation"] = allocation_json(*r.final_allocation);
    j["final_weights"] = r.final_weights->to_rows();
    j["ne"] = {{"partition_game", ne_json(*r.partition_ne)},
               {"weight_game", ne_json(*r.weight_ne)},
               {"tolerance", r.tolerance},
               {"support_tolerance", r.support_tolerance}};
  }

  if (r.algorithm == Algorithm::kPbrag) {
    j["pbrag"] = {{"converged_at", optional_json(r.converged_at)},
                  {"stalled", r.stalled},
                  {"dominance_margin", optional_json(r.dominance_margin)},
                  {"gamma_min", optional_json(r.gamma_min)},
                  {"finite_time_bound", optional_json(r.finite_time_bound)}};
    if (r.converged_at && r.finite_time_bound) {
      j["pbrag"]["within_bound"] = *r.converged_at <= *r.finite_time_bound;
    }
  }

  if (r.algorithm == Algorithm::kDpbrag) {
    json d = {{"period", optional_json(r.period)},
              {"diameter_surrogate", optional_json(r.diameter)},
              {"epsilon", r.epsilon},
              {"nu", r.nu},
              {"within_hypotheses", r.within_hypotheses},
              {"tau", optional_json(r.tau)},
              {"first_dominating_hit", optional_json(r.first_dominating_hit)},
              {"peak_non_dominating", r.peak_non_dominating},
              {"allocation_stable_since", optional_json(r.allocation_stable_since)},
              {"messages_per_round", r.messages_per_round},
              {"values_per_round", r.values_per_round},
              {"total_messages", r.total_messages}};
    if (r.derivation) {
      d["derivation"] = {{"alpha_min", r.derivation->alpha_min},
                         {"mu", r.derivation->mu},
                         {"period_lower", r.derivation->period_lower},
                         {"spread", r.derivation->spread},
                         {"half_gap", r.derivation->half_gap}};
    }
    j["dpbrag"] = d;
  }
  return j;
}

namespace detail {

inline void fill_static(RunReport& r, const Scenario& s, const RewardMatrix& f) {
  r.scenario = s.name;
  r.algorithm = s.algorithm;
  r.agents = f.agents();
  r.tasks = f.tasks();
  r.tolerance = s.tolerance;
  r.support_tolerance = s.support_tolerance;
  const auto assumptions = check_assumptions(f);
  r.unique_dominating = assumptions.unique_dominating();
  r.trivial_tasks = assumptions.violating_tasks();
  try {
    r.optimal = enumerate_optimal_partitions(f);
    r.optimal_in_ne = verify_inclusion(f);
  } catch (const EnumerationCapExceeded&) {
  }
}

inline void fill_final(RunReport& r, const Matrix& w, const RewardMatrix& f) {
  const WeightMatrix weights(w);
  r.final_weights = w;
  r.final_allocation = translated_support(weights, r.support_tolerance);
  r.partition_ne = is_ne_partition_game(*r.final_allocation, f);
  r.weight_ne = is_ne_weight_game(weights, f, r.tolerance);
}

inline void fill_pbrag_bound(RunReport& r, const RewardMatrix& f, const StepSizeMatrix& gamma) {
  r.gamma_min = gamma.min();
  if (r.unique_dominating) {
    r.dominance_margin = dominance_margin(f);
    r.finite_time_bound = finite_time_bound(f, gamma);
  }
}

inline void fill_dpbrag_params(RunReport& r, const ResolvedDpbrag& d, const RewardMatrix& f) {
  r.period = d.params.period;
  r.diameter = d.params.diameter;
  r.epsilon = d.params.epsilon;
  r.nu = d.params.nu;
  r.derivation = d.derivation;
  r.within_hypotheses = dpbrag_hypotheses_hold(f, d.params);
  r.messages_per_round = d.graph.arcs().size();
  r.values_per_round = 2 * f.tasks() * d.graph.arcs().size();
}

// Converged once the terminal properties have held for a full period.
inline bool dpbrag_converged(const RunReport& r) {
  return r.tau && r.rounds >= *r.tau && r.rounds - *r.tau >= *r.period;
}

}  // namespace detail

/// Runs the scenario. When out_dir is set, writes trajectory.csv (every
/// trajectory_stride rounds plus the final round) and report.json there.
inline RunReport run_scenario(const Scenario& s, const std::optional<std::filesystem::path>& out_dir = {}) {
  const RewardMatrix f = resolve_rewards(s);
  RunReport r;
  detail::fill_static(r, s, f);

  std::ofstream csv;
  std::optional<TrajectoryWriter> writer;
  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    csv.open(*out_dir / "trajectory.csv");
    if (!csv) throw std::runtime_error("cannot write " + (*out_dir / "trajectory.csv").string());
    writer.emplace(csv);
  }

  if (s.algorithm == Algorithm::kNone) {
    r.converged = true;
  } else if (s.algorithm == Algorithm::kPbrag) {
    const WeightMatrix w0 = resolve_initial_weights(s, f);
    const StepSizeMatrix gamma = resolve_step_sizes(s, f);
    detail::fill_pbrag_bound(r, f, gamma);
    const Trajectory traj = run_pbrag(w0, f, gamma, s.max_rounds, s.pbrag.stall_tolerance);
    r.converged_at = traj.converged_at;
    r.stalled = traj.stalled;
    r.rounds = traj.states.size() - 1;
    r.converged = traj.converged_at.has_value() || traj.stalled;
    if (writer) {
      for (std::size_t t = 0; t < traj.states.size(); ++t) {
        if (t % s.trajectory_stride == 0 || t + 1 == traj.states.size()) writer->write(t, traj.states[t]);
      }
    }
    detail::fill_final(r, traj.final_state().matrix(), f);
  } else {
    const WeightMatrix w0 = resolve_initial_weights(s, f);
    const ResolvedDpbrag d = resolve_dpbrag(s, f);
    const RewardSequence seq = resolve_sequence(s, f);
    detail::fill_dpbrag_params(r, d, f);
    DpbragOptions options;
    std::uint64_t last_written = 0;
    bool any_written = false;
    if (writer) {
      options.observer = [&](const DpbragState& st) {
        if (st.t % s.trajectory_stride == 0) {
          writer->write(st);
          last_written = st.t;
          any_written = true;
        }
      };
    }
    const DpbragRun run = run_dpbrag(w0, d.graph, seq, d.params, d.max_rounds, options);
    if (writer && (!any_written || last_written != run.final_state.t)) writer->write(run.final_state);
    r.rounds = run.rounds;
    r.tau = run.tau;
    r.first_dominating_hit = run.first_dominating_hit;
    r.peak_non_dominating = run.peak_non_dominating;
    r.allocation_stable_since = run.allocation_stable_since();
    r.total_messages = run.total_messages;
    r.converged = detail::dpbrag_converged(r);
    detail::fill_final(r, run.final_state.w, f);
  }

  if (out_dir) {
    csv.close();
    std::ofstream rep(*out_dir / "report.json");
    rep << to_json(r).dump(2) << '\n';
  }
  return r;
}

/// Rebuilds a report from a trajectory CSV written by run_scenario. With a
/// stride of 1 every verdict is recomputed from the recorded weights alone;
/// the scenario supplies f, step sizes and the graph.
inline RunReport replay_scenario(const Scenario& s, const TrajectoryRecord& rec) {
  const RewardMatrix f = resolve_rewards(s);
  RunReport r;
  detail::fill_static(r, s, f);
  if (s.algorithm == Algorithm::kNone) {
    r.converged = true;
    return r;
  }
  if (rec.weights.front().rows() != f.agents() || rec.weights.front().cols() != f.tasks()) {
    throw ParseError("trajectory shape does not match the scenario");
  }
  r.rounds = rec.rounds.back();
  const Matrix& last = rec.final_weights();

  if (s.algorithm == Algorithm::kPbrag) {
    const StepSizeMatrix gamma = resolve_step_sizes(s, f);
    detail::fill_pbrag_bound(r, f, gamma);
    // A run stops as stalled after storing a state within stall_tolerance
    // of its predecessor; an exact fixed point is never stored twice.
    if (rec.weights.size() >= 2 &&
        max_abs_diff(last, rec.weights[rec.weights.size() - 2]) <= s.pbrag.stall_tolerance) {
      r.stalled = true;
    } else if (is_equilibrium_weight(WeightMatrix(last), f, gamma)) {
      r.converged_at = r.rounds;
    }
    r.converged = r.converged_at.has_value() || r.stalled;
  } else {
    const ResolvedDpbrag d = resolve_dpbrag(s, f);
    detail::fill_dpbrag_params(r, d, f);
    r.total_messages = r.rounds * r.messages_per_round;
    std::optional<std::uint64_t> last_failure;
    std::optional<AllocationProfile> alloc;
    for (std::size_t k = 0; k < rec.weights.size(); ++k) {
      const Matrix& w = rec.weights[k];
      const std::uint64_t t = rec.rounds[k];
      bool dom_one = true;
      bool others_small = true;
      for (std::size_t i = 0; i < f.agents(); ++i) {
        for (std::size_t q = 0; q < f.tasks(); ++q) {
          if (is_dominating(i, q, f)) {
            dom_one = dom_one && w(i, q) == 1.0;
          } else {
            others_small = others_small && w(i, q) <= d.params.epsilon;
            r.peak_non_dominating = std::max(r.peak_non_dominating, w(i, q));
          }
        }
      }
      if (dom_one && !r.first_dominating_hit) r.first_dominating_hit = t;
      if (!(dom_one && others_small)) last_failure = t;
      auto a = translated_support(WeightMatrix(w));
      if (!alloc || *alloc != a) {
        alloc = std::move(a);
        r.allocation_stable_since = t;
      }
    }
    if (!last_failure) {
      r.tau = 0;
    } else if (*last_failure < r.rounds) {
      r.tau = *last_failure + 1;
    }
    r.converged = detail::dpbrag_converged(r);
  }
  detail::fill_final(r, last, f);
  return r;
}

/// Whether two reports agree on every verdict a trajectory determines.
inline bool same_verdicts(const RunReport& a, const RunReport& b) {
  auto ne = [](const std::optional<NeReport>& x) { return x ? std::optional<bool>(x->is_ne) : std::nullopt; };
  return a.final_allocation == b.final_allocation && ne(a.partition_ne) == ne(b.partition_ne) &&
         ne(a.weight_ne) == ne(b.weight_ne) && a.converged == b.converged &&
         a.converged_at == b.converged_at && a.stalled == b.stalled && a.tau == b.tau &&
         a.first_dominating_hit == b.first_dominating_hit &&
         a.peak_non_dominating == b.peak_non_dominating &&
         a.allocation_stable_since == b.allocation_stable_since && a.rounds == b.rounds;
}

struct NeVerdicts {
  AllocationProfile allocation;
  NeReport partition_game;  // on C(W)
  NeReport weight_game;     // on W
};

/// Runs both equilibrium checks on W read from a weights file.
inline NeVerdicts verify_ne(const Matrix& w, const RewardMatrix& f, double tol,
                            double support_tol = 0.0) {
  if (w.rows() != f.agents() || w.cols() != f.tasks()) {
    throw ScenarioError("weights shape does not match the reward matrix");
  }
  WeightMatrix weights = [&] {
    try {
      return WeightMatrix(w);
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(std::string("weights: ") + e.what());
    }
  }();
  auto alloc = translated_support(weights, support_tol);
  auto p = is_ne_partition_game(alloc, f);
  return {std::move(alloc), std::move(p), is_ne_weight_game(weights, f, tol)};
}

struct Expectation {
  std::string description;
  bool met = false;
};

/// Pinned outcomes for the builtin scenarios.
inline std::vector<Expectation> builtin_expectations(const std::string& name, const RunReport& r) {
  std::vector<Expectation> out;
  auto alloc_is = [&](const AllocationProfile& want) {
    return r.final_allocation && *r.final_allocation == want;
  };
  if (name == "example1") {
    std::vector<std::string> got;
    if (r.optimal)
      for (const auto& p : r.optimal->partitions) got.push_back(p.profile().to_string());
    out.push_back({"optimal set is {({1,2},{}), ({2},{1})}",
                   got == std::vector<std::string>{"({1,2},{})", "({2},{1})"}});
    out.push_back({"every optimal partition is an equilibrium", r.optimal_in_ne.value_or(false)});
  } else if (name == "table1-pbrag") {
    const auto want = Partition::from_owners(4, table_one_owners()).profile();
    out.push_back({"allocation is " + want.to_string(), alloc_is(want)});
    out.push_back({"converged within 2 rounds", r.converged_at && *r.converged_at <= 2});
  } else if (name == "single-task-eps09" || name == "single-task-eps03") {
    const AllocationProfile want(1, {{0}, {}, {}, {}});
    out.push_back({"allocation is " + want.to_string(), alloc_is(want)});
    out.push_back({"terminal properties hold for 5 periods after tau",
                   r.tau && r.period && r.rounds - *r.tau >= 5 * *r.period});
  } else if (name == "table1-dpbrag") {
    const auto want = Partition::from_owners(4, table_one_owners()).profile();
    out.push_back({"allocation is " + want.to_string(), alloc_is(want)});
    out.push_back({"allocation stable for the last quarter of the run",
                   r.allocation_stable_since && *r.allocation_stable_since <= r.rounds * 3 / 4});
  }
  return out;
}

}  // namespace taskalloc::harness

#endif  // TASKALLOC_HARNESS_RUN_HPP_
