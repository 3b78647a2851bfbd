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

#ifndef PMWU_EQUILIBRIUM_HPP_
#define PMWU_EQUILIBRIUM_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "pmwu/core_types.hpp"
#include "pmwu/linalg.hpp"

namespace pmwu {

// Player 1 (rows) maximizes x^T A y, player 2 (columns) minimizes it.
struct EquilibriumResult {
  Simplex x_star;
  Simplex y_star;
  double value = 0.0;
  double gap = 0.0;  // >= 0
  bool fully_mixed = false;

  JointState joint() const { return {x_star, y_star}; }
};

struct VerifyResult {
  bool ok = false;
  double gap = 0.0;
};

// gap = max(max_i (Ay)_i - v, v - min_j (A^T x)_j, 0) with v = x^T A y.
inline VerifyResult VerifyEquilibrium(const PayoffMatrix& a, const Simplex& x,
                                      const Simplex& y, double tol = 1e-10) {
  if (x.size() != a.rows() || y.size() != a.cols()) {
    throw InputError("equilibrium candidate dimensions do not match the matrix");
  }
  const auto px = x.probabilities();
  const auto py = y.probabilities();
  const auto ay = a.Apply(py);
  const auto atx = a.ApplyTransposed(px);
  double v = 0.0;
  for (std::size_t i = 0; i < px.size(); ++i) v += px[i] * ay[i];
  const double gap = std::max({*std::max_element(ay.begin(), ay.end()) - v,
                               v - *std::min_element(atx.begin(), atx.end()), 0.0});
  return {gap <= tol, gap};
}

namespace detail {

// Solves [M -1; 1^T 0] [w; v] = [0; 1] for the k x k submatrix M of `a`
// selected by rows/cols (transposed when `transpose`). Returns w followed by v.
// Extended precision keeps exactly representable solutions exact after the
// final rounding to double.
inline std::optional<std::vector<double>> SolveBordered(
    const PayoffMatrix& a, const std::vector<std::size_t>& rows,
    const std::vector<std::size_t>& cols, bool transpose) {
  const std::size_t k = rows.size();
  const std::size_t n = k + 1;
  std::vector<long double> m(n * n, 0.0L), b(n, 0.0L);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      m[i * n + j] = transpose ? a(rows[j], cols[i]) : a(rows[i], cols[j]);
    }
    m[i * n + k] = -1.0;
    m[k * n + i] = 1.0;
  }
  b[k] = 1.0L;
  const auto sol = LuSolve(std::move(m), std::move(b), n);
  if (!sol) return std::nullopt;
  return std::vector<double>(sol->begin(), sol->end());
}

// Embeds support weights into a full probability vector; nullopt when a
// weight is below -tol. Small negatives are clamped to 0.
inline std::optional<std::vector<double>> Embed(const std::vector<double>& w,
                                                const std::vector<std::size_t>& support,
                                                std::size_t dim, double tol) {
  std::vector<double> p(dim, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (!(w[i] >= -tol)) return std::nullopt;
    p[support[i]] = std::max(0.0, w[i]);
    total += p[support[i]];
  }
  if (!(total > 0.0)) return std::nullopt;
  for (double& v : p) v /= total;
  return p;
}

inline std::optional<EquilibriumResult> TrySupport(const PayoffMatrix& a,
                                                   const std::vector<std::size_t>& rows,
                                                   const std::vector<std::size_t>& cols,
                                                   double tol) {
  const auto ysol = SolveBordered(a, rows, cols, false);
  const auto xsol = SolveBordered(a, rows, cols, true);
  if (!ysol || !xsol) return std::nullopt;
  const auto py = Embed(*ysol, cols, a.cols(), tol);
  const auto px = Embed(*xsol, rows, a.rows(), tol);
  if (!py || !px) return std::nullopt;
  EquilibriumResult r{Simplex::FromProbabilities(*px, 1e-9),
                      Simplex::FromProbabilities(*py, 1e-9), 0.0, 0.0, false};
  const auto check = VerifyEquilibrium(a, r.x_star, r.y_star, tol);
  if (!check.ok) return std::nullopt;
  r.gap = check.gap;
  const auto ay = a.Apply(*py);
  for (std::size_t i = 0; i < px->size(); ++i) r.value += (*px)[i] * ay[i];
  r.fully_mixed = r.x_star.min_prob() > 0.0 && r.y_star.min_prob() > 0.0;
  return r;
}

// Advances `idx` (strictly increasing, values < n) to the next k-subset in
// lexicographic order; false after the last one.
inline bool NextSubset(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline std::vector<std::size_t> FirstSubset(std::size_t k) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  return idx;
}

}  // namespace detail

// Equilibrium of the matrix game. Square games try the full-support solve
// first; otherwise supports of equal size k = 1, 2, ... are enumerated in
// lexicographic order (row subsets outer, column subsets inner). Every
// matrix game has an optimal pair on some square nonsingular kernel, so the
// enumeration is complete.
inline EquilibriumResult SolveZeroSum(const PayoffMatrix& a, double tol = 1e-10) {
  if (!(tol > 0.0)) throw InputError("solver tolerance must be positive");
  if (a.rows() > 6 || a.cols() > 6) {
    throw InputError("solver supports games up to 6x6");
  }
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m == n) {
    const auto all = detail::FirstSubset(m);
    if (auto r = detail::TrySupport(a, all, all, tol)) return *r;
  }
  for (std::size_t k = 1; k <= std::min(m, n); ++k) {
    auto rows = detail::FirstSubset(k);
    do {
      auto cols = detail::FirstSubset(k);
      do {
        if (auto r = detail::TrySupport(a, rows, cols, tol)) return *r;
      } while (detail::NextSubset(cols, n));
    } while (detail::NextSubset(rows, m));
  }
  throw NumericalError("support enumeration found no equilibrium");
}

// The equilibrium of matrices[0] if it is also an equilibrium of every
// other matrix within `tol`; the reported gap is the worst over the schedule.
inline std::optional<EquilibriumResult> CommonEquilibrium(const PeriodicGame& game,
                                                          double tol = 1e-10) {
  EquilibriumResult r = SolveZeroSum(game.matrices().front(), tol);
  for (const auto& a : game.matrices()) {
    const auto check = VerifyEquilibrium(a, r.x_star, r.y_star, tol);
    if (!check.ok) return std::nullopt;
    r.gap = std::max(r.gap, check.gap);
  }
  return r;
}

// A = B - 1 (x*^T B) - (B y*) 1^T + (x*^T B y*) 1 1^T, so A y* = 0 and
// x*^T A = 0: (x*, y*) is an equilibrium of value 0.
inline PayoffMatrix GenerateCommonEquilibriumGame(const Simplex& x_star,
                                                  const Simplex& y_star,
                                                  const PayoffMatrix& b) {
  if (x_star.size() != b.rows() || y_star.size() != b.cols()) {
    throw InputError("seed matrix shape does not match the target equilibrium");
  }
  if (x_star.on_boundary() || y_star.on_boundary() || !(x_star.min_prob() > 0.0) ||
      !(y_star.min_prob() > 0.0)) {
    throw InputError("target equilibrium must be fully mixed");
  }
  const auto px = x_star.probabilities();
  const auto py = y_star.probabilities();
  const auto by = b.Apply(py);
  const auto xb = b.ApplyTransposed(px);
  double xby = 0.0;
  for (std::size_t i = 0; i < px.size(); ++i) xby += px[i] * by[i];
  std::vector<double> e(b.rows() * b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      e[i * b.cols() + j] = b(i, j) - xb[j] - by[i] + xby;
    }
  }
  return PayoffMatrix(b.rows(), b.cols(), std::move(e));
}

// Entries i.i.d. uniform on [lo, hi).
inline PayoffMatrix RandomPayoffMatrix(std::size_t m, std::size_t n,
                                       std::mt19937_64& rng, double lo = -1.0,
                                       double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> e(m * n);
  for (double& v : e) v = u(rng);
  return PayoffMatrix(m, n, std::move(e));
}

// Interior point with weights drawn uniformly from [lo, 1) and normalized.
inline Simplex RandomInteriorSimplex(std::size_t m, std::mt19937_64& rng,
                                     double lo = 0.2) {
  std::uniform_real_distribution<double> u(lo, 1.0);
  std::vector<double> logw(m);
  for (double& v : logw) v = std::log(u(rng));
  return Simplex::FromLogWeights(std::move(logw));
}

struct GeneratedGame {
  PeriodicGame game;
  JointState equilibrium;
};

// T matrices sharing a random interior equilibrium, each from an
// independent random seed matrix.
inline GeneratedGame GenerateCommonEquilibriumSchedule(std::size_t m, std::size_t n,
                                                       std::size_t period,
                                                       std::uint64_t seed) {
  if (period < 1) throw InputError("period must be >= 1");
  std::mt19937_64 rng(seed);
  Simplex x = RandomInteriorSimplex(m, rng);
  Simplex y = RandomInteriorSimplex(n, rng);
  std::vector<PayoffMatrix> mats;
  for (std::size_t t = 0; t < period; ++t) {
    mats.push_back(GenerateCommonEquilibriumGame(x, y, RandomPayoffMatrix(m, n, rng)));
  }
  return {PeriodicGame(std::move(mats)), {std::move(x), std::move(y)}};
}

}  // namespace pmwu

#endif  // PMWU_EQUILIBRIUM_HPP_
