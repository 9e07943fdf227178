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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "taskalloc/harness/instances.hpp"
#include "taskalloc/nash_analysis.hpp"
#include "taskalloc/pbrag.hpp"

namespace taskalloc {
namespace {

using harness::example_one;
using harness::table_one;

TEST(PbragStep, ExampleOneFromZero) {
  const auto next = pbrag_step(WeightMatrix::zeros(2, 2), example_one(), StepSizeMatrix::uniform(2, 2, 1.0));
  EXPECT_EQ(next.matrix(), (Matrix{{0.5, 0.7}, {0.5, 0.3}}));
}

TEST(PbragStep, ShapeMismatch) {
  EXPECT_THROW(pbrag_step(WeightMatrix::zeros(2, 3), example_one(), StepSizeMatrix::uniform(2, 2, 1.0)),
               std::invalid_argument);
  EXPECT_THROW(pbrag_step(WeightMatrix::zeros(2, 2), example_one(), StepSizeMatrix::uniform(1, 2, 1.0)),
               std::invalid_argument);
}

TEST(PbragStep, UniqueNeIsFixed) {
  const auto w = *unique_ne(table_one());
  EXPECT_EQ(pbrag_step(w, table_one(), StepSizeMatrix::uniform(4, 8, 3.0)), w);
}

TEST(Equilibrium, Cases) {
  const auto gamma = StepSizeMatrix::uniform(4, 8, 1.0);
  EXPECT_TRUE(is_equilibrium_weight(*unique_ne(table_one()), table_one(), gamma, 0.0));
  EXPECT_FALSE(is_equilibrium_weight(WeightMatrix::zeros(2, 2), example_one(), StepSizeMatrix::uniform(2, 2, 1.0)));
  // A zero column with idle opponents has zero gradient everywhere.
  const RewardMatrix f(Matrix{{0.0, 0.4}, {0.0, 0.1}});
  const WeightMatrix w(Matrix{{0.3, 1.0}, {0.0, 0.0}});
  const auto next = pbrag_step(w, f, StepSizeMatrix::uniform(2, 2, 1.0));
  EXPECT_EQ(next(0, 0), 0.3);
  EXPECT_EQ(next(1, 0), 0.0);
}

TEST(RunPbrag, TableOneTwoStepPreset) {
  const auto gamma = two_step_gains(table_one());
  EXPECT_EQ(finite_time_bound(table_one(), gamma), 2u);
  const auto traj = run_pbrag(WeightMatrix::zeros(4, 8), table_one(), gamma, 100);
  ASSERT_TRUE(traj.converged_at);
  EXPECT_LE(*traj.converged_at, 2u);
  EXPECT_EQ(translated_support(traj.final_state()),
            Partition::from_owners(4, harness::table_one_owners()).profile());
  for (double v : traj.final_state().matrix().values()) EXPECT_TRUE(v == 0.0 || v == 1.0);
}

TEST(RunPbrag, ExampleOneLimitHasEquilibriumProperties) {
  const auto traj = run_pbrag(WeightMatrix::zeros(2, 2), example_one(), StepSizeMatrix::uniform(2, 2, 1.0), 10000);
  const auto& w = traj.final_state();
  EXPECT_EQ(w(0, 1), 1.0);
  EXPECT_EQ(w(1, 1), 0.0);
  // Both agents dominate task a and approach 1 geometrically.
  EXPECT_TRUE(traj.stalled);
  EXPECT_NEAR(w(0, 0), 1.0, 1e-9);
  EXPECT_NEAR(w(1, 0), 1.0, 1e-9);
  EXPECT_TRUE(is_ne_weight_game(w, example_one(), 1e-6).is_ne);
}

TEST(RunPbrag, StartAtFixedPoint) {
  const auto w = *unique_ne(table_one());
  const auto traj = run_pbrag(w, table_one(), StepSizeMatrix::uniform(4, 8, 1.0), 5);
  ASSERT_TRUE(traj.converged_at);
  EXPECT_EQ(*traj.converged_at, 0u);
  EXPECT_EQ(traj.states.size(), 1u);
}

TEST(RunPbrag, BudgetAndStall) {
  EXPECT_THROW(run_pbrag(WeightMatrix::zeros(2, 2), example_one(), StepSizeMatrix::uniform(2, 2, 1.0), 0),
               std::invalid_argument);
  const auto traj = run_pbrag(WeightMatrix::zeros(4, 8), table_one(), StepSizeMatrix::uniform(4, 8, 0.01), 3);
  EXPECT_FALSE(traj.converged_at);
  EXPECT_FALSE(traj.stalled);
  EXPECT_EQ(traj.states.size(), 4u);
  // Two tied dominating agents approach 1 geometrically and never reach it.
  const RewardMatrix tie(Matrix{{0.5}, {0.5}});
  const auto slow = run_pbrag(WeightMatrix::zeros(2, 1), tie, StepSizeMatrix::uniform(2, 1, 0.5), 100000);
  EXPECT_FALSE(slow.converged_at);
  EXPECT_TRUE(slow.stalled);
  EXPECT_TRUE(is_ne_weight_game(slow.final_state(), tie, 1e-6).is_ne);
}

TEST(Bound, Cases) {
  EXPECT_EQ(finite_time_bound(table_one(), StepSizeMatrix::uniform(4, 8, 320.0)), 2u);
  EXPECT_NEAR(dominance_margin(table_one()), 0.0064, 1e-12);
  EXPECT_THROW(finite_time_bound(example_one(), StepSizeMatrix::uniform(2, 2, 1.0)), std::domain_error);
  // delta = 0.5 exactly; gamma = 1 / delta.
  const RewardMatrix f(Matrix{{1.0, 0.25}, {0.5, 0.75}});
  EXPECT_EQ(dominance_margin(f), 0.5);
  EXPECT_EQ(finite_time_bound(f, StepSizeMatrix::uniform(2, 2, 2.0)), 2u);
  EXPECT_EQ(finite_time_bound(f, StepSizeMatrix::uniform(2, 2, 0.5)), 8u);
  EXPECT_THROW(finite_time_bound(f, StepSizeMatrix::uniform(3, 2, 1.0)), std::invalid_argument);
}

// Weights stay in the unit box and dominating coordinates never decrease.
TEST(PbragProperties, RangeAndMonotonicity) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const std::size_t m = 1 + (trial / 4) % 4;
    const RewardMatrix f(trial % 2 ? oracle::tied_rewards(rng, n, m) : oracle::uniform_matrix(rng, n, m));
    const StepSizeMatrix gamma(oracle::uniform_matrix(rng, n, m, 0.05, 5.0));
    WeightMatrix w(oracle::uniform_matrix(rng, n, m));
    for (int t = 0; t < 20; ++t) {
      const auto next = pbrag_step(w, f, gamma);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t q = 0; q < m; ++q) {
          EXPECT_GE(next(i, q), 0.0);
          EXPECT_LE(next(i, q), 1.0);
          if (is_dominating(i, q, f)) {
            EXPECT_GE(next(i, q), w(i, q));
          }
        }
      }
      w = next;
    }
  }
}

// Column q of the next state depends only on column q of the inputs, and
// permuting tasks or agents commutes with the step.
TEST(PbragProperties, ColumnDecouplingAndPermutation) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const std::size_t m = 2 + (trial / 3) % 3;
    const Matrix f = oracle::uniform_matrix(rng, n, m);
    const Matrix g = oracle::uniform_matrix(rng, n, m, 0.1, 3.0);
    const Matrix w = oracle::uniform_matrix(rng, n, m);
    const auto next = pbrag_step(WeightMatrix(w), RewardMatrix(f), StepSizeMatrix(g));

    for (std::size_t q = 0; q < m; ++q) {
      Matrix f1(n, 1), g1(n, 1), w1(n, 1);
      for (std::size_t i = 0; i < n; ++i) {
        f1(i, 0) = f(i, q);
        g1(i, 0) = g(i, q);
        w1(i, 0) = w(i, q);
      }
      const auto col = pbrag_step(WeightMatrix(w1), RewardMatrix(f1), StepSizeMatrix(g1));
      for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(col(i, 0), next(i, q));
    }

    std::vector<std::size_t> rows(n), cols(m);
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    auto permute = [&](const Matrix& x) {
      Matrix out(n, m);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t q = 0; q < m; ++q) out(i, q) = x(rows[i], cols[q]);
      return out;
    };
    const auto permuted = pbrag_step(WeightMatrix(permute(w)), RewardMatrix(permute(f)), StepSizeMatrix(permute(g)));
    EXPECT_EQ(permuted.matrix(), permute(next.matrix()));
  }
}

// Every constructed equilibrium is a fixed point for any step size.
TEST(PbragProperties, AnalyticEquilibriaAreFixedPoints) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const std::size_t m = 1 + (trial / 4) % 4;
    const RewardMatrix f(oracle::tied_rewards(rng, n, m));
    Matrix w(n, m, 0.0);
    for (std::size_t q = 0; q < m; ++q) {
      const auto dom = dominating_agents(q, f);
      const std::size_t chosen = dom[std::uniform_int_distribution<std::size_t>(0, dom.size() - 1)(rng)];
      for (std::size_t i : dom) w(i, q) = i == chosen ? 1.0 : unit(rng);
    }
    const WeightMatrix ne(w);
    ASSERT_TRUE(is_ne_weight_game(ne, f).is_ne);
    const StepSizeMatrix gamma(oracle::uniform_matrix(rng, n, m, 0.01, 100.0));
    EXPECT_TRUE(is_equilibrium_weight(ne, f, gamma, 0.0));
  }
}

TEST(PbragProperties, LimitsAreEquilibria) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const std::size_t m = 1 + (trial / 4) % 4;
    const RewardMatrix f(trial % 2 ? oracle::tied_rewards(rng, n, m) : oracle::uniform_matrix(rng, n, m));
    const StepSizeMatrix gamma(oracle::uniform_matrix(rng, n, m, 0.2, 4.0));
    const auto traj = run_pbrag(WeightMatrix(oracle::uniform_matrix(rng, n, m)), f, gamma, 200000);
    ASSERT_TRUE(traj.converged_at || traj.stalled);
    EXPECT_TRUE(is_ne_weight_game(traj.final_state(), f, 1e-6).is_ne);
  }
}

TEST(PbragProperties, ConvergesWithinFiniteTimeBound) {
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> logc(std::log(0.05), std::log(3.0));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto f = harness::generate_random_instance(seed, 3, 5);
    const double delta = dominance_margin(f);
    Matrix g(3, 5);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t q = 0; q < 5; ++q) g(i, q) = std::exp(logc(rng)) / delta;
    const StepSizeMatrix gamma(g);
    const auto bound = finite_time_bound(f, gamma);
    const auto traj = run_pbrag(WeightMatrix(oracle::uniform_matrix(rng, 3, 5)), f, gamma, bound + 10);
    ASSERT_TRUE(traj.converged_at) << seed;
    EXPECT_LE(*traj.converged_at, bound) << seed;
    EXPECT_EQ(traj.final_state(), *unique_ne(f));
  }
}

}  // namespace
}  // namespace taskalloc
