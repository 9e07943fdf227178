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

// Seeded instance generation and the fixed reference instances.

#ifndef TASKALLOC_HARNESS_INSTANCES_HPP_
#define TASKALLOC_HARNESS_INSTANCES_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "taskalloc/consensus_graph.hpp"
#include "taskalloc/dpbrag.hpp"
#include "taskalloc/matrix.hpp"

namespace taskalloc::harness {

struct FactoredInstance {
  Matrix reward;      // r ~ U[0, 1]
  Matrix importance;  // phi ~ U[0, 1]
  RewardMatrix f;
};

/// Draws r then phi, each row-major and uniform on [0, 1], from a
/// mt19937_64 seeded with seed; f = r * phi.
inline FactoredInstance generate_factored_instance(std::uint64_t seed, std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw std::invalid_argument("generate_random_instance: n and m must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix r(n, m);
  Matrix phi(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t q = 0; q < m; ++q) r(i, q) = unit(rng);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t q = 0; q < m; ++q) phi(i, q) = unit(rng);
  auto f = RewardMatrix::factored(r, phi);
  return {std::move(r), std::move(phi), std::move(f)};
}

inline RewardMatrix generate_random_instance(std::uint64_t seed, std::size_t n, std::size_t m) {
  return generate_factored_instance(seed, n, m).f;
}

/// a ~ U[0, f], b ~ U[0, 10], c ~ U[0, 1], drawn per entry in that order.
inline RewardSequence::DampedCosine random_damped_cosine(const RewardMatrix& f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = f.agents();
  const std::size_t m = f.tasks();
  RewardSequence::DampedCosine p{Matrix(n, m), Matrix(n, m), Matrix(n, m)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t q = 0; q < m; ++q) {
      p.amplitude(i, q) = f(i, q) * unit(rng);
      p.frequency(i, q) = 10.0 * unit(rng);
      p.decay(i, q) = unit(rng);
    }
  }
  return p;
}

/// Two agents, tasks a and b: f_1 = (0.5, 0.7), f_2 = (0.5, 0.3).
inline RewardMatrix example_one() { return RewardMatrix(Matrix{{0.5, 0.7}, {0.5, 0.3}}); }

/// Four agents, eight tasks, values to four decimals.
inline RewardMatrix table_one() {
  return RewardMatrix(Matrix{
      {0.4536, 0.4407, 0.2881, 0.0055, 0.0049, 0.2394, 0.3152, 0.2217},
      {0.7504, 0.2228, 0.0411, 0.2801, 0.2374, 0.0768, 0.0852, 0.1760},
      {0.7656, 0.0987, 0.1381, 0.2491, 0.2969, 0.1003, 0.1471, 0.6902},
      {0.3023, 0.2211, 0.3334, 0.2462, 0.3033, 0.4991, 0.1231, 0.5931},
  });
}

/// Optimal owners for table_one(), 0-based: V1 = {2,7}, V2 = {4},
/// V3 = {1,8}, V4 = {3,5,6} in 1-based ids.
inline std::vector<std::size_t> table_one_owners() { return {2, 0, 3, 1, 3, 3, 0, 2}; }

/// Single-task profile f_1 = B, f_2 = 0.9 B, f_i = 0.3 B / i for i >= 3.
inline RewardMatrix single_task_profile(std::size_t n, double scale = 1000.0) {
  if (n < 2) throw std::invalid_argument("single_task_profile: needs n >= 2");
  Matrix f(n, 1);
  f(0, 0) = scale;
  f(1, 0) = 0.9 * scale;
  for (std::size_t i = 2; i < n; ++i) f(i, 0) = 0.3 * scale / static_cast<double>(i + 1);
  return RewardMatrix(std::move(f));
}

/// Arcs (1,2), (2,3), (3,4), (4,1): a directed 4-cycle.
inline DirectedGraph four_cycle() { return DirectedGraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

}  // namespace taskalloc::harness

#endif  // TASKALLOC_HARNESS_INSTANCES_HPP_
