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

// Strategy simplices stored in log space, payoff matrices, periodic payoff
// schedules, and the joint KL-divergence between strategy profiles.

#ifndef PMWU_CORE_TYPES_HPP_
#define PMWU_CORE_TYPES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pmwu {

// Malformed arguments: dimension mismatches, invalid probabilities, bad
// configuration values.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation that should succeed on valid input failed numerically
// (singular solve, non-converging root iteration).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what,
                          std::vector<double> residuals = {})
      : std::runtime_error(what), residuals_(std::move(residuals)) {}
  const std::vector<double>& residuals() const { return residuals_; }

 private:
  std::vector<double> residuals_;
};

// The hypotheses of a checker do not hold for the supplied input. Distinct
// from a property failure, which is reported through PropertyReport.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Log-probabilities below this are an exact boundary point: exp() underflows
// to zero in binary64.
inline constexpr double kBoundaryLogProb = -745.0;

namespace detail {

inline double LogSumExp(std::span<const double> v) {
  double hi = -kInf;
  for (double x : v) hi = std::max(hi, x);
  if (hi == -kInf) return -kInf;
  double acc = 0.0;
  for (double x : v) acc += std::exp(x - hi);
  return hi + std::log(acc);
}

// Writes softmax-normalized log-probabilities of `logw` into `out` (which may
// alias `logw`). The maximum entry is shifted to zero before exponentiation.
// Shifts by the max before the log-sum so large offsets cancel exactly.
inline void NormalizeLogInPlace(std::span<double> logw) {
  const double mx = *std::max_element(logw.begin(), logw.end());
  if (!std::isfinite(mx)) {
    throw InputError("log-weights must contain at least one finite entry");
  }
  for (double& x : logw) x -= mx;
  const double lse = LogSumExp(logw);
  for (double& x : logw) x -= lse;
}

}  // namespace detail

// A mixed strategy in the probability simplex, held as normalized
// log-probabilities. Adding a constant to every log-weight yields the same
// Simplex, so log_probs() is a canonical representative of the class.
// Probabilities are cached alongside; when built from probabilities the
// cache holds the given values (renormalized), so exact inputs stay exact.
class Simplex {
 public:
  Simplex() = default;

  // Softmax of arbitrary log-weights. Entries may be -inf (exact zeros) but
  // at least one must be finite.
  static Simplex FromLogWeights(std::vector<double> logw) {
    if (logw.size() < 2) throw InputError("simplex needs at least 2 entries");
    for (double x : logw) {
      if (std::isnan(x) || x == kInf) {
        throw InputError("log-weights must be finite or -inf");
      }
    }
    detail::NormalizeLogInPlace(logw);
    Simplex s;
    s.probs_.resize(logw.size());
    std::transform(logw.begin(), logw.end(), s.probs_.begin(),
                   [](double l) { return std::exp(l); });
    s.log_probs_ = std::move(logw);
    return s;
  }

  // Probabilities must be non-negative and sum to 1 within `tol`; they are
  // renormalized exactly.
  static Simplex FromProbabilities(std::span<const double> probs,
                                   double tol = 1e-9) {
    if (probs.size() < 2) throw InputError("simplex needs at least 2 entries");
    double total = 0.0;
    for (double p : probs) {
      if (!std::isfinite(p) || p < 0.0) {
        throw InputError("probabilities must be finite and non-negative");
      }
      total += p;
    }
    if (std::abs(total - 1.0) > tol) {
      throw InputError("probabilities must sum to 1 (got " +
                       std::to_string(total) + ")");
    }
    Simplex s;
    s.probs_.assign(probs.begin(), probs.end());
    if (total != 1.0) {
      for (double& p : s.probs_) p /= total;
    }
    s.log_probs_.resize(probs.size());
    std::transform(s.probs_.begin(), s.probs_.end(), s.log_probs_.begin(),
                   [](double p) { return p > 0.0 ? std::log(p) : -kInf; });
    return s;
  }
  static Simplex FromProbabilities(std::initializer_list<double> probs,
                                   double tol = 1e-9) {
    return FromProbabilities(std::span<const double>(probs.begin(), probs.size()),
                             tol);
  }

  static Simplex Uniform(std::size_t m) {
    return FromLogWeights(std::vector<double>(m, 0.0));
  }

  std::size_t size() const { return log_probs_.size(); }
  std::span<const double> log_probs() const { return log_probs_; }
  double log_prob(std::size_t i) const { return log_probs_.at(i); }
  double prob(std::size_t i) const { return probs_.at(i); }
  std::vector<double> probabilities() const { return probs_; }
  double min_prob() const { return *std::min_element(probs_.begin(), probs_.end()); }

  // True when some coordinate is an exact zero (or below double range).
  bool on_boundary() const {
    return std::any_of(log_probs_.begin(), log_probs_.end(),
                       [](double l) { return l < kBoundaryLogProb; });
  }

 private:
  std::vector<double> log_probs_;
  std::vector<double> probs_;  // exp(log_probs_) up to rounding
};

// Max-norm distance between probability vectors.
inline double MaxAbsDiff(const Simplex& a, const Simplex& b) {
  if (a.size() != b.size()) throw InputError("simplex dimension mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a.prob(i) - b.prob(i)));
  }
  return d;
}

// Row-major m x n payoff matrix. Player 1 (rows) maximizes x1^T A x2, player 2
// (columns) minimizes it.
class PayoffMatrix {
 public:
  PayoffMatrix() = default;
  PayoffMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ < 2 || cols_ < 2) {
      throw InputError("payoff matrix must be at least 2x2");
    }
    if (entries_.size() != rows_ * cols_) {
      throw InputError("payoff entry count does not match dimensions");
    }
    for (double v : entries_) {
      if (!std::isfinite(v)) throw InputError("payoff entries must be finite");
    }
  }
  PayoffMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : PayoffMatrix(FromRows(std::vector<std::vector<double>>(rows.begin(),
                                                               rows.end()))) {}

  static PayoffMatrix FromRows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw InputError("payoff matrix has no rows");
    const std::size_t n = rows.front().size();
    std::vector<double> e;
    e.reserve(rows.size() * n);
    for (const auto& r : rows) {
      if (r.size() != n) throw InputError("payoff rows have unequal length");
      e.insert(e.end(), r.begin(), r.end());
    }
    return PayoffMatrix(rows.size(), n, std::move(e));
  }

  static PayoffMatrix Zero(std::size_t rows, std::size_t cols) {
    return PayoffMatrix(rows, cols, std::vector<double>(rows * cols, 0.0));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  std::span<const double> entries() const { return entries_; }

  // A x for x of length cols().
  void Apply(std::span<const double> x, std::span<double> out) const {
    for (std::size_t i = 0; i < rows_; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) acc += entries_[i * cols_ + j] * x[j];
      out[i] = acc;
    }
  }
  std::vector<double> Apply(std::span<const double> x) const {
    if (x.size() != cols_) throw InputError("A*x dimension mismatch");
    std::vector<double> out(rows_);
    Apply(x, out);
    return out;
  }

  // A^T x for x of length rows().
  void ApplyTransposed(std::span<const double> x, std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out[j] += entries_[i * cols_ + j] * x[i];
    }
  }
  std::vector<double> ApplyTransposed(std::span<const double> x) const {
    if (x.size() != rows_) throw InputError("A^T*x dimension mismatch");
    std::vector<double> out(cols_);
    ApplyTransposed(x, out);
    return out;
  }

  PayoffMatrix Shifted(double c) const {
    std::vector<double> e = entries_;
    for (double& v : e) v += c;
    return PayoffMatrix(rows_, cols_, std::move(e));
  }

  friend bool operator==(const PayoffMatrix&, const PayoffMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

// A_t = matrices[t mod T] for every integer t, including t = -1.
class PeriodicGame {
 public:
  PeriodicGame() = default;
  explicit PeriodicGame(std::vector<PayoffMatrix> matrices)
      : matrices_(std::move(matrices)) {
    if (matrices_.empty()) throw InputError("periodic game needs a matrix");
    for (const auto& a : matrices_) {
      if (a.rows() != matrices_.front().rows() ||
          a.cols() != matrices_.front().cols()) {
        throw InputError("all matrices of a periodic game must share dimensions");
      }
    }
  }

  std::size_t period() const { return matrices_.size(); }
  std::size_t rows() const { return matrices_.front().rows(); }
  std::size_t cols() const { return matrices_.front().cols(); }
  const std::vector<PayoffMatrix>& matrices() const { return matrices_; }

  std::size_t phase(std::int64_t t) const {
    const auto period = static_cast<std::int64_t>(matrices_.size());
    return static_cast<std::size_t>(((t % period) + period) % period);
  }
  const PayoffMatrix& at(std::int64_t t) const { return matrices_[phase(t)]; }

  friend bool operator==(const PeriodicGame&, const PeriodicGame&) = default;

 private:
  std::vector<PayoffMatrix> matrices_;
};

struct JointState {
  Simplex x1;
  Simplex x2;

  static JointState FromProbabilities(std::initializer_list<double> p1,
                                      std::initializer_list<double> p2) {
    return {Simplex::FromProbabilities(p1), Simplex::FromProbabilities(p2)};
  }
  static JointState Uniform(std::size_t m, std::size_t n) {
    return {Simplex::Uniform(m), Simplex::Uniform(n)};
  }
  double min_prob() const { return std::min(x1.min_prob(), x2.min_prob()); }
};

inline double MaxAbsDiff(const JointState& a, const JointState& b) {
  return std::max(MaxAbsDiff(a.x1, b.x1), MaxAbsDiff(a.x2, b.x2));
}

// KL(p || q) for a single simplex. Evaluated as
//   -sum_i p_i d_i + log1p(sum_i p_i expm1(d_i)),  d_i = log q_i - log p_i,
// which is exact for normalized p and keeps full relative precision when q is
// close to p. Coordinates with p_i = 0 contribute only through the
// normalizer; any p_i > 0 facing a boundary q_i gives +inf.
inline double KlDivergence(const Simplex& p, const Simplex& q) {
  if (p.size() != q.size()) throw InputError("KL dimension mismatch");
  double linear = 0.0;
  double excess = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double lp = p.log_prob(i);
    const double lq = q.log_prob(i);
    if (lp < kBoundaryLogProb) {
      if (lq >= kBoundaryLogProb) excess += std::exp(lq);
      continue;
    }
    if (lq < kBoundaryLogProb) return kInf;
    const double pi = std::exp(lp);
    const double d = lq - lp;
    linear -= pi * d;
    excess += pi * std::expm1(d);
  }
  return std::max(0.0, linear + std::log1p(excess));
}

// Joint divergence summed over both players.
inline double KlDivergence(const JointState& p, const JointState& q) {
  if (p.x1.size() != q.x1.size() || p.x2.size() != q.x2.size()) {
    throw InputError("KL dimension mismatch");
  }
  return KlDivergence(p.x1, q.x1) + KlDivergence(p.x2, q.x2);
}

inline Simplex NormalizeLogWeights(std::vector<double> logw) {
  return Simplex::FromLogWeights(std::move(logw));
}

enum class Algorithm { kMwu, kOmwu, kExtraMwu };

inline std::string ToString(Algorithm a) {
  switch (a) {
    case Algorithm::kMwu: return "mwu";
    case Algorithm::kOmwu: return "omwu";
    case Algorithm::kExtraMwu: return "extra";
  }
  return "?";
}

inline Algorithm ParseAlgorithm(const std::string& s) {
  if (s == "mwu") return Algorithm::kMwu;
  if (s == "omwu") return Algorithm::kOmwu;
  if (s == "extra" || s == "extra-mwu" || s == "extramwu") {
    return Algorithm::kExtraMwu;
  }
  throw InputError("unknown algorithm '" + s + "' (expected mwu|omwu|extra)");
}

struct TrajectoryStep {
  std::int64_t t = 0;
  std::size_t phase = 0;
  JointState state;
  double kl_to_ref = kNaN;  // NaN when the trajectory has no reference
  double min_component = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;
  std::optional<JointState> reference;
  PeriodicGame game;
  double eta = 0.0;
  Algorithm algo = Algorithm::kMwu;
  std::int64_t record_every = 1;

  const TrajectoryStep& back() const { return steps.back(); }
  std::size_t size() const { return steps.size(); }
};

}  // namespace pmwu

#endif  // PMWU_CORE_TYPES_HPP_
