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

// Directed communication graphs and synchronous max/submax agreement.
//
// Arc (j, i) means j sends to i, so the in-neighbors of i are the nodes it
// hears from. Every node also hears from itself.

#ifndef TASKALLOC_CONSENSUS_GRAPH_HPP_
#define TASKALLOC_CONSENSUS_GRAPH_HPP_

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "taskalloc/numeric.hpp"

namespace taskalloc {

class DirectedGraph {
 public:
  using Arc = std::pair<std::size_t, std::size_t>;  // (from, to)

  DirectedGraph() = default;

  DirectedGraph(std::size_t nodes, std::vector<Arc> arcs) : nodes_(nodes), in_(nodes), out_(nodes) {
    if (nodes == 0) throw std::invalid_argument("DirectedGraph: needs at least one node");
    for (const auto& [from, to] : arcs) {
      if (from >= nodes || to >= nodes) {
        throw std::out_of_range("DirectedGraph: arc (" + std::to_string(from + 1) + "," +
                                std::to_string(to + 1) + ") references a missing node");
      }
      if (from == to) throw std::invalid_argument("DirectedGraph: self-loops are implicit");
      in_[to].push_back(from);
      out_[from].push_back(to);
    }
    for (auto* lists : {&in_, &out_}) {
      for (auto& l : *lists) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
      }
    }
    for (std::size_t i = 0; i < nodes_; ++i)
      for (std::size_t j : in_[i]) arcs_.emplace_back(j, i);
    std::sort(arcs_.begin(), arcs_.end());
  }

  // 0 -> 1 -> ... -> n-1 -> 0.
  static DirectedGraph cycle(std::size_t n) {
    std::vector<Arc> arcs;
    if (n >= 2)
      for (std::size_t i = 0; i < n; ++i) arcs.emplace_back(i, (i + 1) % n);
    return DirectedGraph(n, std::move(arcs));
  }

  static DirectedGraph complete(std::size_t n) {
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) arcs.emplace_back(i, j);
    return DirectedGraph(n, std::move(arcs));
  }

  // Path with arcs in both directions.
  static DirectedGraph line(std::size_t n) {
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      arcs.emplace_back(i, i + 1);
      arcs.emplace_back(i + 1, i);
    }
    return DirectedGraph(n, std::move(arcs));
  }

  std::size_t nodes() const { return nodes_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  const std::vector<std::size_t>& in_neighbors(std::size_t i) const {
    check(i);
    return in_[i];
  }

  const std::vector<std::size_t>& out_neighbors(std::size_t i) const {
    check(i);
    return out_[i];
  }

  /// In-neighbors together with i itself, sorted.
  std::vector<std::size_t> closed_in_neighbors(std::size_t i) const {
    check(i);
    std::vector<std::size_t> out = in_[i];
    out.insert(std::upper_bound(out.begin(), out.end(), i), i);
    return out;
  }

  /// Hop counts from source along arc direction; max() marks unreachable.
  std::vector<std::size_t> distances_from(std::size_t source) const {
    return bfs(source, out_);
  }

  bool is_strongly_connected() const {
    constexpr auto kUnreached = std::numeric_limits<std::size_t>::max();
    for (const auto* adj : {&out_, &in_}) {
      const auto d = bfs(0, *adj);
      if (std::find(d.begin(), d.end(), kUnreached) != d.end()) return false;
    }
    return true;
  }

  /// Longest shortest directed path over ordered node pairs.
  std::size_t diameter() const {
    if (!is_strongly_connected()) {
      throw std::domain_error("diameter: graph is not strongly connected");
    }
    std::size_t out = 0;
    for (std::size_t s = 0; s < nodes_; ++s) {
      const auto d = bfs(s, out_);
      out = std::max(out, *std::max_element(d.begin(), d.end()));
    }
    return out;
  }

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.nodes_ == b.nodes_ && a.arcs_ == b.arcs_;
  }

 private:
  void check(std::size_t i) const {
    if (i >= nodes_) throw std::out_of_range("node index " + std::to_string(i) + " out of range");
  }

  std::vector<std::size_t> bfs(std::size_t source,
                               const std::vector<std::vector<std::size_t>>& adj) const {
    std::vector<std::size_t> dist(nodes_, std::numeric_limits<std::size_t>::max());
    std::deque<std::size_t> frontier{source};
    dist[source] = 0;
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop_front();
      for (std::size_t v : adj[u]) {
        if (dist[v] == std::numeric_limits<std::size_t>::max()) {
          dist[v] = dist[u] + 1;
          frontier.push_back(v);
        }
      }
    }
    return dist;
  }

  std::size_t nodes_ = 0;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<Arc> arcs_;
};

struct AgreementState {
  std::vector<double> max_estimate;     // M
  std::vector<double> submax_estimate;  // S
  std::size_t round = 0;

  static AgreementState from_values(std::span<const double> v) {
    return {std::vector<double>(v.begin(), v.end()), std::vector<double>(v.begin(), v.end()), 0};
  }

  friend bool operator==(const AgreementState&, const AgreementState&) = default;
};

/// One synchronous agreement round:
///   M_i <- max_{j in closed N_i} M_j
///   S_i <- submax({S_j : j in closed N_i} u {M_i', v_i})
/// where M_i' is the max just computed. Neighbor reads come from the
/// current state. Using the updated own max lets the holder of the second
/// value recover it in the round the max arrives; with the previous M_i
/// agreement on S can take 2 * diameter + 1 rounds.
inline AgreementState agreement_round(const DirectedGraph& g, const AgreementState& state,
                                      std::span<const double> v) {
  const std::size_t n = g.nodes();
  if (state.max_estimate.size() != n || state.submax_estimate.size() != n || v.size() != n) {
    throw std::invalid_argument("agreement_round: size mismatch");
  }
  AgreementState next{std::vector<double>(n), std::vector<double>(n), state.round + 1};
  std::vector<double> pool;
  for (std::size_t i = 0; i < n; ++i) {
    double best = state.max_estimate[i];
    pool.assign({state.submax_estimate[i], v[i]});
    for (std::size_t j : g.in_neighbors(i)) {
      best = std::max(best, state.max_estimate[j]);
      pool.push_back(state.submax_estimate[j]);
    }
    pool.push_back(best);
    next.max_estimate[i] = best;
    next.submax_estimate[i] = submax(pool);
  }
  return next;
}

/// Runs agreement from M = S = v. Requires a strongly connected graph and
/// at least 2 * diameter rounds, after which every node holds max(v) and
/// submax(v); a violation of either is reported as a logic_error.
inline AgreementState run_agreement(const DirectedGraph& g, std::span<const double> v,
                                    std::size_t rounds) {
  if (!g.is_strongly_connected()) {
    throw std::domain_error("run_agreement: graph is not strongly connected");
  }
  if (v.size() != g.nodes()) throw std::invalid_argument("run_agreement: size mismatch");
  const std::size_t d = g.diameter();
  if (rounds < 2 * d) {
    throw std::invalid_argument("run_agreement: needs at least 2 * diameter rounds");
  }
  const double top = *std::max_element(v.begin(), v.end());
  const double second = submax(v);
  auto state = AgreementState::from_values(v);
  for (std::size_t t = 0; t < rounds; ++t) {
    state = agreement_round(g, state, v);
    for (std::size_t i = 0; i < g.nodes(); ++i) {
      if (state.round >= d && state.max_estimate[i] != top) {
        throw std::logic_error("run_agreement: max not agreed by round diameter");
      }
      if (state.round >= 2 * d && state.submax_estimate[i] != second) {
        throw std::logic_error("run_agreement: submax not agreed by round 2 * diameter");
      }
    }
  }
  return state;
}

}  // namespace taskalloc

#endif  // TASKALLOC_CONSENSUS_GRAPH_HPP_
