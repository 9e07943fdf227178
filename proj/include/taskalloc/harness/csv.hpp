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

// Trajectory CSV and plain matrix CSV.
//
// Trajectory rows are `t,agent,task,w,M,S,e,z` with 1-based agent and task
// ids. Centralized runs leave M, S, e and z empty. Reals are written with
// 17 significant digits, which round-trips IEEE doubles exactly.

#ifndef TASKALLOC_HARNESS_CSV_HPP_
#define TASKALLOC_HARNESS_CSV_HPP_

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "taskalloc/dpbrag.hpp"
#include "taskalloc/matrix.hpp"

namespace taskalloc::harness {

inline constexpr std::string_view kTrajectoryHeader = "t,agent,task,w,M,S,e,z";

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline double parse_real(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty numeric field");
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ParseError("bad numeric field '" + std::string(s) + "'");
  }
  return v;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

class TrajectoryWriter {
 public:
  explicit TrajectoryWriter(std::ostream& os) : os_(os) { os_ << kTrajectoryHeader << '\n'; }

  void write(std::uint64_t t, const WeightMatrix& w) {
    for (std::size_t i = 0; i < w.agents(); ++i)
      for (std::size_t q = 0; q < w.tasks(); ++q)
        os_ << t << ',' << i + 1 << ',' << q + 1 << ',' << format_real(w(i, q)) << ",,,,\n";
  }

  void write(const DpbragState& s) {
    for (std::size_t i = 0; i < s.w.rows(); ++i) {
      for (std::size_t q = 0; q < s.w.cols(); ++q) {
        os_ << s.t << ',' << i + 1 << ',' << q + 1 << ',' << format_real(s.w(i, q)) << ','
            << format_real(s.max_estimate(i, q)) << ',' << format_real(s.submax_estimate(i, q))
            << ',' << format_real(s.held(i, q)) << ',' << format_real(s.sample(i, q)) << '\n';
      }
    }
  }

 private:
  std::ostream& os_;
};

/// Weights per round, as read back from a trajectory CSV.
struct TrajectoryRecord {
  std::vector<std::uint64_t> rounds;
  std::vector<Matrix> weights;
  bool distributed = false;  // M/S/e/z columns were present

  const Matrix& final_weights() const { return weights.back(); }
};

inline TrajectoryRecord read_trajectory(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("trajectory: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrajectoryHeader) throw ParseError("trajectory: unexpected header '" + line + "'");

  struct Row {
    std::size_t agent, task;
    double w;
  };
  std::map<std::uint64_t, std::vector<Row>> by_round;
  std::size_t n = 0, m = 0;
  bool distributed = false;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_fields(line);
    if (fields.size() != 8) {
      throw ParseError("trajectory line " + std::to_string(lineno) + ": expected 8 fields");
    }
    auto as_index = [&](std::string_view s) {
      std::size_t v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size() || v == 0) {
        throw ParseError("trajectory line " + std::to_string(lineno) + ": bad index");
      }
      return v;
    };
    std::uint64_t t = 0;
    {
      auto [p, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), t);
      if (ec != std::errc() || p != fields[0].data() + fields[0].size()) {
        throw ParseError("trajectory line " + std::to_string(lineno) + ": bad round");
      }
    }
    const std::size_t agent = as_index(fields[1]);
    const std::size_t task = as_index(fields[2]);
    n = std::max(n, agent);
    m = std::max(m, task);
    if (!fields[4].empty()) distributed = true;
    by_round[t].push_back({agent - 1, task - 1, parse_real(fields[3])});
  }
  if (by_round.empty()) throw ParseError("trajectory: no rows");

  TrajectoryRecord out;
  out.distributed = distributed;
  for (auto& [t, rows] : by_round) {
    if (rows.size() != n * m) {
      throw ParseError("trajectory: round " + std::to_string(t) + " is incomplete");
    }
    Matrix w(n, m);
    for (const auto& r : rows) w(r.agent, r.task) = r.w;
    out.rounds.push_back(t);
    out.weights.push_back(std::move(w));
  }
  return out;
}

/// Reads a matrix with one row per line and comma-separated entries.
/// Blank lines and lines starting with '#' are skipped.
inline Matrix read_matrix_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> row;
    for (auto field : split_fields(line)) row.push_back(parse_real(field));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("matrix: no rows");
  try {
    return Matrix::from_rows(rows);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline void write_matrix_csv(std::ostream& os, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << format_real(m(i, j));
    }
    os << '\n';
  }
}

/// Final weights from either a trajectory CSV or a plain matrix CSV.
inline Matrix read_weights_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::string first;
  std::getline(in, first);
  if (!first.empty() && first.back() == '\r') first.pop_back();
  in.clear();
  in.seekg(0);
  if (first == kTrajectoryHeader) return read_trajectory(in).final_weights();
  return read_matrix_csv(in);
}

}  // namespace taskalloc::harness

#endif  // TASKALLOC_HARNESS_CSV_HPP_
