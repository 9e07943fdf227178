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

#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "taskalloc/harness/instances.hpp"
#include "taskalloc/nash_analysis.hpp"

namespace taskalloc {
namespace {

using harness::example_one;
using harness::table_one;

std::vector<std::string> names(const OptimalSet& s) {
  std::vector<std::string> out;
  for (const auto& p : s.partitions) out.push_back(p.profile().to_string());
  return out;
}

AllocationProfile from_holdings(const oracle::Holdings& h) {
  std::vector<std::vector<std::size_t>> subsets(h.size());
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t q = 0; q < h[i].size(); ++q)
      if (h[i][q]) subsets[i].push_back(q);
  return AllocationProfile(h[0].size(), subsets);
}

TEST(PartitionGameNe, ExampleOne) {
  const auto f = example_one();
  EXPECT_TRUE(is_ne_partition_game(AllocationProfile(2, {{0, 1}, {0}}), f).is_ne);

  const auto unheld = is_ne_partition_game(AllocationProfile(2, {{1}, {}}), f);
  EXPECT_FALSE(unheld.is_ne);
  ASSERT_EQ(unheld.violations.size(), 1u);
  EXPECT_EQ(unheld.violations[0].property, NeProperty::kDominatingHolds);
  EXPECT_EQ(unheld.violations[0].task, 0u);

  const auto intruder = is_ne_partition_game(AllocationProfile(2, {{0, 1}, {1}}), f);
  EXPECT_FALSE(intruder.is_ne);
  ASSERT_EQ(intruder.violations.size(), 1u);
  EXPECT_EQ(intruder.violations[0].property, NeProperty::kOthersAbstain);
  EXPECT_EQ(intruder.violations[0].agent, 1u);
  EXPECT_EQ(intruder.violations[0].task, 1u);
  EXPECT_EQ(intruder.violations[0].to_string(), "task 2: non-dominating agent 2 holds it");
}

TEST(PartitionGameNe, ExampleOneExactlyThreeOfSixteen) {
  const auto f = example_one();
  std::set<std::string> passing;
  for (const auto& h : oracle::all_holdings(2, 2)) {
    const auto a = from_holdings(h);
    if (is_ne_partition_game(a, f).is_ne) passing.insert(a.to_string());
  }
  EXPECT_EQ(passing, (std::set<std::string>{"({1,2},{})", "({1,2},{1})", "({2},{1})"}));
}

TEST(WeightGameNe, ExampleOne) {
  const auto f = example_one();
  EXPECT_TRUE(is_ne_weight_game(WeightMatrix(Matrix{{1, 1}, {0.6, 0}}), f).is_ne);
  EXPECT_FALSE(is_ne_weight_game(WeightMatrix(Matrix{{0.9, 1}, {0.9, 0}}), f).is_ne);
  const auto r = is_ne_weight_game(WeightMatrix(Matrix{{1, 1}, {0, 0.2}}), f);
  EXPECT_FALSE(r.is_ne);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].property, NeProperty::kOthersAbstain);
  EXPECT_TRUE(is_ne_weight_game(WeightMatrix(Matrix{{1, 1}, {0, 1e-7}}), f, 1e-6).is_ne);
  EXPECT_TRUE(is_ne_weight_game(WeightMatrix(Matrix{{1 - 1e-7, 1}, {0, 0}}), f, 1e-6).is_ne);
  EXPECT_THROW(is_ne_weight_game(WeightMatrix::zeros(2, 2), f, -1.0), std::invalid_argument);
}

TEST(Enumerate, ExampleOne) {
  const auto opt = enumerate_optimal_partitions(example_one());
  EXPECT_EQ(names(opt), (std::vector<std::string>{"({1,2},{})", "({2},{1})"}));
  EXPECT_DOUBLE_EQ(opt.optimal_value, 1.2);
}

TEST(Enumerate, TableOne) {
  const auto opt = enumerate_optimal_partitions(table_one());
  EXPECT_EQ(names(opt), (std::vector<std::string>{"({2,7},{4},{1,8},{3,5,6})"}));
}

TEST(Enumerate, SingleAgent) {
  const auto opt = enumerate_optimal_partitions(RewardMatrix(Matrix{{0.2, 0.0, 0.9}}));
  EXPECT_EQ(names(opt), (std::vector<std::string>{"({1,2,3})"}));
}

TEST(Enumerate, CapGuard) {
  const RewardMatrix f(Matrix(10, 8, 0.5));  // 10^8 > default cap
  EXPECT_THROW(enumerate_optimal_partitions(f), EnumerationCapExceeded);
  EXPECT_THROW(verify_inclusion(f), EnumerationCapExceeded);
  EXPECT_NO_THROW(enumerate_optimal_partitions(RewardMatrix(Matrix(3, 3, 0.5)), 27));
  EXPECT_THROW(enumerate_optimal_partitions(RewardMatrix(Matrix(3, 3, 0.5)), 26), EnumerationCapExceeded);
}

TEST(Enumerate, MatchesBruteForceOptimum) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const std::size_t m = 1 + (trial / 3) % 4;
    const Matrix raw = trial % 2 ? oracle::tied_rewards(rng, n, m) : oracle::uniform_matrix(rng, n, m);
    const RewardMatrix f(raw);
    const auto opt = enumerate_optimal_partitions(f);
    const auto brute = oracle::brute_force_optimum(oracle::grid(raw));
    std::set<std::vector<std::size_t>> got;
    for (const auto& p : opt.partitions) {
      std::vector<std::size_t> owner(m);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t q : p.profile().subset(i)) owner[q] = i;
      got.insert(owner);
      EXPECT_DOUBLE_EQ(objective(p, f), opt.optimal_value);
    }
    EXPECT_EQ(got, brute.owners);
    EXPECT_NEAR(opt.optimal_value, brute.value, 1e-12);
  }
}

// Reassigning one task of an optimal partition to a non-dominating agent
// strictly lowers the objective.
TEST(Enumerate, NonDominatingReassignmentLosesValue) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const RewardMatrix f(oracle::tied_rewards(rng, 3, 3));
    const auto opt = enumerate_optimal_partitions(f);
    for (const auto& p : opt.partitions) {
      for (std::size_t q = 0; q < 3; ++q) {
        for (std::size_t j = 0; j < 3; ++j) {
          if (is_dominating(j, q, f)) continue;
          std::vector<std::size_t> owner(3);
          for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t t : p.profile().subset(i)) owner[t] = i;
          owner[q] = j;
          EXPECT_LT(objective(Partition::from_owners(3, owner), f), opt.optimal_value);
        }
      }
    }
  }
}

TEST(Inclusion, Examples) {
  EXPECT_TRUE(verify_inclusion(example_one()));
  EXPECT_TRUE(verify_inclusion(table_one()));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    EXPECT_TRUE(verify_inclusion(harness::generate_random_instance(seed, 3, 4))) << seed;
  }
}

TEST(UniqueNe, Cases) {
  const auto t = unique_ne(table_one());
  ASSERT_TRUE(t);
  EXPECT_EQ(translated_support(*t), Partition::from_owners(4, harness::table_one_owners()).profile());
  EXPECT_TRUE(is_ne_weight_game(*t, table_one()).is_ne);
  EXPECT_FALSE(unique_ne(example_one()));
  EXPECT_FALSE(unique_ne(RewardMatrix(Matrix{{0.9, 0.4}, {0.1, 0.4}})));
}

TEST(UniqueNe, SupportIsTheOnlyOptimum) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto f = harness::generate_random_instance(seed, 3, 3);
    const auto w = unique_ne(f);
    ASSERT_TRUE(w);
    EXPECT_TRUE(is_ne_weight_game(*w, f, 0.0).is_ne);
    const auto opt = enumerate_optimal_partitions(f);
    ASSERT_EQ(opt.partitions.size(), 1u);
    EXPECT_EQ(opt.partitions[0].profile(), translated_support(*w));
  }
}

// Characterization checkers against exhaustive deviation search.
TEST(NeOracle, PartitionGameMatchesDeviationSearch) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const std::size_t m = 1 + (trial / 3) % 3;
    const Matrix raw = oracle::tied_rewards(rng, n, m);
    const RewardMatrix f(raw);
    for (const auto& h : oracle::all_holdings(n, m)) {
      EXPECT_EQ(is_ne_partition_game(from_holdings(h), f).is_ne,
                oracle::partition_game_nash(h, oracle::grid(raw)));
    }
  }
}

TEST(NeOracle, WeightGameMatchesDeviationSearch) {
  std::mt19937_64 rng(24);
  std::uniform_int_distribution<int> level(0, 4);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const std::size_t m = 1 + (trial / 3) % 3;
    const Matrix raw = oracle::tied_rewards(rng, n, m);
    Matrix w(n, m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t q = 0; q < m; ++q) w(i, q) = 0.25 * level(rng);
    EXPECT_EQ(is_ne_weight_game(WeightMatrix(w), RewardMatrix(raw)).is_ne,
              oracle::weight_game_nash(oracle::grid(w), oracle::grid(raw)));
  }
}

// For binary W the two checkers agree through C.
TEST(NeOracle, BinaryWeightsAgreeWithSupport) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 40; ++trial) {
    const RewardMatrix f(oracle::tied_rewards(rng, 2, 3));
    for (const auto& h : oracle::all_holdings(2, 3)) {
      const auto a = from_holdings(h);
      EXPECT_EQ(is_ne_weight_game(indicator_weights(a), f).is_ne, is_ne_partition_game(a, f).is_ne);
    }
  }
}

}  // namespace
}  // namespace taskalloc
