// Copyright 2026 The pmwu Authors
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

// Small dense linear algebra: real and complex LU with partial pivoting.
// Sized for n <= 8; nothing here allocates more than O(n^2).

#ifndef PMWU_LINALG_HPP_
#define PMWU_LINALG_HPP_

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "pmwu/core_types.hpp"

namespace pmwu {

// Row-major n x n matrix of finite doubles.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
  SquareMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : n_(rows.size()) {
    for (const auto& r : rows) {
      if (r.size() != n_) throw InputError("square matrix rows must have length n");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }

  static SquareMatrix Identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  SquareMatrix operator*(const SquareMatrix& b) const {
    SquareMatrix c(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k)
        for (std::size_t j = 0; j < n_; ++j) c(i, j) += (*this)(i, k) * b(k, j);
    return c;
  }

  double trace() const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
    return s;
  }

  bool all_finite() const {
    for (double v : a_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

namespace detail {

// Solves M x = b in place by Gaussian elimination with partial pivoting.
// Returns nullopt when a pivot falls below `pivot_tol` times the largest
// entry of M.
template <typename T>
std::optional<std::vector<T>> LuSolve(std::vector<T> m, std::vector<T> b,
                                      std::size_t n, double pivot_tol = 1e-13) {
  double scale = 0.0;
  for (const T& v : m) scale = std::max(scale, static_cast<double>(std::abs(v)));
  if (scale == 0.0) return std::nullopt;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m[i * n + k]) > std::abs(m[piv * n + k])) piv = i;
    }
    if (std::abs(m[piv * n + k]) <= pivot_tol * scale) return std::nullopt;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[piv * n + j]);
      std::swap(b[k], b[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const T f = m[i * n + k] / m[k * n + k];
      if (f == T(0)) continue;
      for (std::size_t j = k; j < n; ++j) m[i * n + j] -= f * m[k * n + j];
      b[i] -= f * b[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    T s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= m[k * n + j] * b[j];
    b[k] = s / m[k * n + k];
  }
  return b;
}

// det(M) by LU with partial pivoting; exact zero pivots give 0.
template <typename T>
T LuDeterminant(std::vector<T> m, std::size_t n) {
  T det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m[i * n + k]) > std::abs(m[piv * n + k])) piv = i;
    }
    if (m[piv * n + k] == T(0)) return T(0);
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[piv * n + j]);
      det = -det;
    }
    det *= m[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const T f = m[i * n + k] / m[k * n + k];
      for (std::size_t j = k; j < n; ++j) m[i * n + j] -= f * m[k * n + j];
    }
  }
  return det;
}

}  // namespace detail
}  // namespace pmwu

#endif  // PMWU_LINALG_HPP_
