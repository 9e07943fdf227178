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

#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "taskalloc/dpbrag.hpp"
#include "taskalloc/harness/instances.hpp"
#include "taskalloc/nash_analysis.hpp"
#include "taskalloc/pbrag.hpp"

namespace taskalloc {
namespace {

using harness::example_one;
using harness::table_one;

TEST(SigmaSw, Branches) {
  EXPECT_EQ(sigma_sw(3, 9, 4, 4), 9);
  EXPECT_EQ(sigma_sw(3, 9, 5, 4), 3);
  EXPECT_EQ(sigma_sw(3, 9, 0, 4), 9);
  EXPECT_THROW(sigma_sw(3, 9, 1, 0), std::invalid_argument);
}

TEST(RewardSequence, Constant) {
  const auto seq = RewardSequence::constant(example_one());
  EXPECT_TRUE(seq.is_constant());
  for (std::uint64_t t : {0u, 1u, 17u}) EXPECT_EQ(seq.sample(t), example_one().matrix());
}

TEST(RewardSequence, DampedCosineFormula) {
  const RewardMatrix f(Matrix{{2.0}});
  const auto seq = RewardSequence::damped_cosine(f, {Matrix{{1.5}}, Matrix{{0.7}}, Matrix{{0.2}}});
  for (std::uint64_t t = 0; t < 30; ++t) {
    const double want = 2.0 + 1.5 * std::cos(0.7 * t) * std::exp(-0.2 * t);
    EXPECT_DOUBLE_EQ(seq(0, 0, t), want);
  }
  EXPECT_NEAR(seq(0, 0, 400), 2.0, 1e-30);
  EXPECT_FALSE(seq.is_constant());
}

TEST(RewardSequence, DampedCosineValidation) {
  const RewardMatrix f(Matrix{{1.0}});
  EXPECT_THROW(RewardSequence::damped_cosine(f, {Matrix{{1.5}}, Matrix{{1}}, Matrix{{1}}}), std::invalid_argument);
  EXPECT_THROW(RewardSequence::damped_cosine(f, {Matrix{{0.5}}, Matrix{{1}}, Matrix{{-1}}}), std::invalid_argument);
  EXPECT_THROW(RewardSequence::damped_cosine(f, {Matrix{{0.5, 0.1}}, Matrix{{1}}, Matrix{{1}}}), std::invalid_argument);
}

TEST(RewardSequence, RandomParametersStayNonnegative) {
  const auto f = harness::generate_random_instance(3, 4, 8);
  const auto seq = RewardSequence::damped_cosine(f, harness::random_damped_cosine(f, 5));
  for (std::uint64_t t = 0; t < 50; ++t) {
    const Matrix z = seq.sample(t);
    for (double x : z.values()) EXPECT_GE(x, 0.0);
  }
}

TEST(Schedule, TwoPhaseGains) {
  const auto s = StepSchedule::two_phase(1, 1, 2.0, 3.0);
  // T = 10, d = 2: alpha phase on t mod T in [0, 3].
  EXPECT_EQ(s.gain(0, 0, 0, 10, 2), 2.0);
  EXPECT_EQ(s.gain(0, 0, 3, 10, 2), 2.0);
  EXPECT_EQ(s.gain(0, 0, 4, 10, 2), 3.0);
  EXPECT_EQ(s.gain(0, 0, 13, 10, 2), 1.0);
  EXPECT_EQ(s.gain(0, 0, 19, 10, 2), 6.0);
  EXPECT_EQ(StepSchedule::constant(1, 1, 0.25).gain(0, 0, 99, 10, 2), 0.25);
  EXPECT_THROW(StepSchedule::constant(1, 1, 0.0), std::invalid_argument);
  EXPECT_THROW(StepSchedule::two_phase(Matrix(1, 1, 1.0), Matrix(2, 1, 1.0)), std::invalid_argument);
}

TEST(Params, Validation) {
  DpbragParams p;
  p.period = 1;
  p.schedule = StepSchedule::constant(2, 2, 0.1);
  EXPECT_THROW(p.validate(2, 2), std::invalid_argument);
  p.period = 5;
  EXPECT_NO_THROW(p.validate(2, 2));
  EXPECT_THROW(p.validate(3, 2), std::invalid_argument);
  p.epsilon = 1.0;
  EXPECT_THROW(p.validate(2, 2), std::invalid_argument);
  p.epsilon = 0.5;
  p.nu = 0.0;
  EXPECT_THROW(p.validate(2, 2), std::invalid_argument);
  p.nu = 0.1;
  p.diameter = 3;
  p.schedule = StepSchedule::two_phase(2, 2);
  EXPECT_THROW(p.validate(2, 2), std::invalid_argument);
  p.period = 7;
  EXPECT_NO_THROW(p.validate(2, 2));
}

TEST(Derive, TableOne) {
  const auto lo = derive_constant_params(table_one(), 3, 0.9, 0.1);
  const auto hi = derive_constant_params(table_one(), 3, 0.3, 0.1);
  // Task 5 has the smallest half gap, 0.0032.
  EXPECT_NEAR(lo.mu, 0.9 * 0.0032, 1e-12);
  EXPECT_GT(hi.params.period, lo.params.period);
  for (std::size_t q = 0; q < 8; ++q) {
    EXPECT_DOUBLE_EQ(lo.alpha(0, q), 0.9 / (2 * 3 * lo.spread[q]));
  }
  EXPECT_GT(static_cast<double>(lo.params.period), lo.period_lower);
  EXPECT_LE(static_cast<double>(lo.params.period), lo.period_lower + 1.0);
  EXPECT_TRUE(dpbrag_hypotheses_hold(table_one(), lo.params));
  auto tight = lo.params;
  tight.period -= 1;
  EXPECT_FALSE(dpbrag_hypotheses_hold(table_one(), tight));
}

TEST(Derive, Errors) {
  EXPECT_THROW(derive_constant_params(example_one(), 1, 0.5, 0.1), std::domain_error);
  EXPECT_THROW(derive_constant_params(table_one(), 0, 0.5, 0.1), std::invalid_argument);
  EXPECT_THROW(derive_constant_params(table_one(), 3, 0.5, 1.0), std::invalid_argument);
  EXPECT_THROW(derive_constant_params(table_one(), 3, 0.5, 0.999999999), std::domain_error);
}

TEST(DpbragRound, SingleAgentIsFrozen) {
  const RewardMatrix f(Matrix{{0.4, 0.9}});
  const auto seq = RewardSequence::constant(f);
  DpbragParams p;
  p.period = 3;
  p.schedule = StepSchedule::constant(1, 2, 0.7);
  auto s = DpbragState::initial(WeightMatrix(Matrix{{0.3, 0.6}}), seq);
  for (int t = 0; t < 10; ++t) s = dpbrag_round(s, DirectedGraph(1, {}), seq, p);
  EXPECT_EQ(s.w, (Matrix{{0.3, 0.6}}));
}

TEST(DpbragRound, Errors) {
  const auto seq = RewardSequence::constant(table_one());
  DpbragParams p;
  p.period = 8;
  p.schedule = StepSchedule::constant(4, 8, 0.1);
  const auto s = DpbragState::initial(WeightMatrix::zeros(4, 8), seq);
  EXPECT_THROW(dpbrag_round(s, DirectedGraph::cycle(3), seq, p), std::invalid_argument);
  EXPECT_THROW(dpbrag_round(s, DirectedGraph(4, {{0, 1}}), seq, p), std::domain_error);
  EXPECT_THROW(run_dpbrag(WeightMatrix::zeros(4, 8), DirectedGraph(4, {{0, 1}}), seq, p, 10), std::domain_error);
}

// Register invariants along a damped-cosine run: e holds the injected
// sample for a whole period, injection resets M and S, and within a period
// M and S agree on the injected max and submax after d and 2d rounds.
TEST(DpbragProperties, InjectionAndAgreementWithinPeriod) {
  const auto f = table_one();
  const auto seq = RewardSequence::damped_cosine(f, harness::random_damped_cosine(f, 7));
  const auto g = harness::four_cycle();
  const std::uint64_t d = 3;
  DpbragParams p;
  p.period = 10;
  p.diameter = d;
  p.schedule = StepSchedule::two_phase(4, 8);
  DpbragOptions opt;
  opt.record_states = true;
  const auto run = run_dpbrag(WeightMatrix::zeros(4, 8), g, seq, p, 60, opt);
  ASSERT_EQ(run.states.size(), 61u);
  for (const auto& s : run.states) {
    const std::uint64_t k0 = s.t / p.period * p.period;
    const Matrix injected = seq.sample(k0);
    EXPECT_EQ(s.sample, seq.sample(s.t));
    EXPECT_EQ(s.held, injected);
    if (s.t == k0) {
      EXPECT_EQ(s.max_estimate, injected);
      EXPECT_EQ(s.submax_estimate, injected);
    }
    for (std::size_t q = 0; q < 8; ++q) {
      const auto [top, second] = oracle::top_two(injected.column(q));
      for (std::size_t i = 0; i < 4; ++i) {
        if (s.t - k0 >= d) {
          EXPECT_EQ(s.max_estimate(i, q), top);
        }
        if (s.t - k0 >= 2 * d) {
          EXPECT_EQ(s.submax_estimate(i, q), second);
        }
      }
    }
  }
}

TEST(DpbragProperties, Deterministic) {
  const auto f = harness::generate_random_instance(9, 4, 5);
  const auto seq = RewardSequence::damped_cosine(f, harness::random_damped_cosine(f, 9));
  DpbragParams p;
  p.period = 9;
  p.diameter = 3;
  p.schedule = StepSchedule::two_phase(4, 5);
  DpbragOptions opt;
  opt.record_states = true;
  const auto a = run_dpbrag(WeightMatrix::zeros(4, 5), harness::four_cycle(), seq, p, 300, opt);
  const auto b = run_dpbrag(WeightMatrix::zeros(4, 5), harness::four_cycle(), seq, p, 300, opt);
  EXPECT_EQ(a.states, b.states);
  EXPECT_EQ(a.tau, b.tau);
}

TEST(RunDpbrag, TableOneTwoPhaseMatchesCentralized) {
  const auto f = table_one();
  DpbragParams p;
  p.period = 8;
  p.diameter = 3;
  p.schedule = StepSchedule::two_phase(4, 8);
  const auto run = run_dpbrag(WeightMatrix::zeros(4, 8), harness::four_cycle(), RewardSequence::constant(f), p, 2000);
  EXPECT_EQ(run.final_allocation(), translated_support(*unique_ne(f)));
  EXPECT_LT(run.allocation_stable_since(), 1500u);
  EXPECT_EQ(run.messages_per_round, 4u);
  EXPECT_EQ(run.values_per_round, 2u * 8u * 4u);
  EXPECT_EQ(run.total_messages, 4u * 2000u);
  EXPECT_TRUE(run.within_hypotheses);
}

TEST(RunDpbrag, ConstantScheduleTerminalProperties) {
  const auto f = harness::single_task_profile(4);
  const auto seq = RewardSequence::damped_cosine(f, harness::random_damped_cosine(f, 23));
  const auto g = harness::four_cycle();
  const auto derived = derive_constant_params(f, g.diameter(), 0.9, 0.1);
  const auto& p = derived.params;
  std::vector<Matrix> weights;
  DpbragOptions opt;
  opt.observer = [&](const DpbragState& s) { weights.push_back(s.w); };
  const auto run = run_dpbrag(WeightMatrix::zeros(4, 1), g, seq, p, 20 * p.period, opt);
  ASSERT_TRUE(run.tau);
  ASSERT_TRUE(run.first_dominating_hit);
  EXPECT_LE(*run.first_dominating_hit, *run.tau);
  EXPECT_GE(run.rounds - *run.tau, 5 * p.period);
  for (std::uint64_t t = *run.tau; t < weights.size(); ++t) {
    EXPECT_EQ(weights[t](0, 0), 1.0);
    for (std::size_t i = 1; i < 4; ++i) EXPECT_LE(weights[t](i, 0), p.epsilon);
  }
  EXPECT_EQ(run.allocation_stable_since(), *run.tau);
  EXPECT_EQ(run.final_allocation().to_string(), "({1},{},{},{})");
}

TEST(RunDpbrag, OutsideHypothesesStillRuns) {
  const auto f = example_one();
  DpbragParams p;
  p.period = 6;
  p.diameter = 1;
  p.schedule = StepSchedule::constant(2, 2, 0.5);
  const auto run = run_dpbrag(WeightMatrix::zeros(2, 2), DirectedGraph::complete(2), RewardSequence::constant(f), p, 100);
  EXPECT_FALSE(run.within_hypotheses);
  EXPECT_EQ(run.rounds, 100u);
}

}  // namespace
}  // namespace taskalloc
