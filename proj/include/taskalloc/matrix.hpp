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

#ifndef TASKALLOC_MATRIX_HPP_
#define TASKALLOC_MATRIX_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace taskalloc {

// Dense row-major matrix. Rows index agents, columns index tasks.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    *this = from_rows(std::vector<std::vector<double>>(rows.begin(), rows.end()));
  }

  static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    Matrix out;
    out.rows_ = rows.size();
    out.cols_ = rows.empty() ? 0 : rows.front().size();
    out.data_.reserve(out.rows_ * out.cols_);
    for (const auto& row : rows) {
      if (row.size() != out.cols_) {
        throw std::invalid_argument("Matrix: ragged rows");
      }
      out.data_.insert(out.data_.end(), row.begin(), row.end());
    }
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const double> values() const { return data_; }

  std::vector<double> column(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  std::vector<std::vector<double>> to_rows() const {
    std::vector<std::vector<double>> out(rows_, std::vector<double>(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[r][c] = (*this)(r, c);
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Largest absolute entrywise difference.
inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: size mismatch");
  }
  double out = 0.0;
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t k = 0; k < av.size(); ++k) out = std::max(out, std::abs(av[k] - bv[k]));
  return out;
}

namespace detail {

inline void require_nonempty(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw std::invalid_argument(std::string(what) + ": needs at least one agent and one task");
  }
}

}  // namespace detail

/// Nonnegative values f_i(q): what agent i gains from doing task q.
class RewardMatrix {
 public:
  explicit RewardMatrix(Matrix values) : values_(std::move(values)) {
    detail::require_nonempty(values_, "RewardMatrix");
    for (double v : values_.values()) {
      if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument("RewardMatrix: entries must be finite and nonnegative");
      }
    }
  }

  /// Builds f = r * phi entrywise from a reward and an importance factor.
  static RewardMatrix factored(const Matrix& reward, const Matrix& importance) {
    if (reward.rows() != importance.rows() || reward.cols() != importance.cols()) {
      throw std::invalid_argument("RewardMatrix: factor size mismatch");
    }
    for (std::size_t k = 0; k < reward.values().size(); ++k) {
      const double r = reward.values()[k];
      const double p = importance.values()[k];
      if (!std::isfinite(r) || !std::isfinite(p) || r < 0.0 || p < 0.0) {
        throw std::invalid_argument("RewardMatrix: factors must be finite and nonnegative");
      }
    }
    Matrix f(reward.rows(), reward.cols());
    for (std::size_t i = 0; i < f.rows(); ++i)
      for (std::size_t q = 0; q < f.cols(); ++q) f(i, q) = reward(i, q) * importance(i, q);
    return RewardMatrix(std::move(f));
  }

  std::size_t agents() const { return values_.rows(); }
  std::size_t tasks() const { return values_.cols(); }
  double operator()(std::size_t i, std::size_t q) const { return values_(i, q); }
  const Matrix& matrix() const { return values_; }

  friend bool operator==(const RewardMatrix&, const RewardMatrix&) = default;

 private:
  Matrix values_;
};

/// Weight-game profile: w_i^q in [0, 1].
class WeightMatrix {
 public:
  explicit WeightMatrix(Matrix values) : values_(std::move(values)) {
    detail::require_nonempty(values_, "WeightMatrix");
    for (double v : values_.values()) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("WeightMatrix: entries must lie in [0, 1]");
      }
    }
  }

  static WeightMatrix zeros(std::size_t n, std::size_t m) { return WeightMatrix(Matrix(n, m, 0.0)); }

  std::size_t agents() const { return values_.rows(); }
  std::size_t tasks() const { return values_.cols(); }
  double operator()(std::size_t i, std::size_t q) const { return values_(i, q); }
  const Matrix& matrix() const { return values_; }

  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

 private:
  Matrix values_;
};

/// Per-coordinate step sizes, strictly positive.
class StepSizeMatrix {
 public:
  explicit StepSizeMatrix(Matrix values) : values_(std::move(values)) {
    detail::require_nonempty(values_, "StepSizeMatrix");
    for (double v : values_.values()) {
      if (!std::isfinite(v) || v <= 0.0) {
        throw std::invalid_argument("StepSizeMatrix: entries must be finite and > 0");
      }
    }
  }

  static StepSizeMatrix uniform(std::size_t n, std::size_t m, double gamma) {
    return StepSizeMatrix(Matrix(n, m, gamma));
  }

  std::size_t agents() const { return values_.rows(); }
  std::size_t tasks() const { return values_.cols(); }
  double operator()(std::size_t i, std::size_t q) const { return values_(i, q); }
  const Matrix& matrix() const { return values_; }

  double min() const {
    double out = values_.values().front();
    for (double v : values_.values()) out = std::min(out, v);
    return out;
  }

 private:
  Matrix values_;
};

}  // namespace taskalloc

#endif  // TASKALLOC_MATRIX_HPP_
