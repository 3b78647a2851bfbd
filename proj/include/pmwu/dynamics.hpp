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

// Multiplicative-weights learning dynamics on periodic zero-sum games: the
// vanilla (MWU), optimistic (OMWU) and extra-gradient (Extra-MWU) rules, the
// trajectory driver, the step-size bound for Extra-MWU, and the reduced
// four-dimensional form of OMWU on the 2x2 alternating game.
//
// Every update is carried out on log-probabilities followed by a
// max-shifted log-sum-exp normalization, so strategies that collapse toward a
// vertex stay representable far below the smallest positive double.

#ifndef PMWU_DYNAMICS_HPP_
#define PMWU_DYNAMICS_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmwu/core_types.hpp"

namespace pmwu {

namespace detail {

inline void CheckEta(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InputError("step size eta must be positive and finite");
  }
}

inline void CheckFinite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw InputError(std::string(what) + " must be finite");
  }
}

inline void ExpInto(std::span<const double> logp, std::span<double> p) {
  for (std::size_t i = 0; i < logp.size(); ++i) p[i] = std::exp(logp[i]);
}

// out = normalize(logp + eta * payoff). `out` may alias `logp`.
inline void LogStep(std::span<const double> logp, std::span<const double> payoff,
                    double eta, std::span<double> out) {
  for (std::size_t i = 0; i < logp.size(); ++i) out[i] = logp[i] + eta * payoff[i];
  NormalizeLogInPlace(out);
}

// Scratch buffers for one joint update on an m x n game.
struct Workspace {
  std::vector<double> p1, p2, q1, q2;  // probabilities
  std::vector<double> g1, g2, h1, h2;  // payoff vectors
  std::vector<double> l1, l2;          // intermediate log-probabilities

  Workspace(std::size_t m, std::size_t n)
      : p1(m), p2(n), q1(m), q2(n), g1(m), g2(n), h1(m), h2(n), l1(m), l2(n) {}
};

inline void Negate(std::span<double> v) {
  for (double& x : v) x = -x;
}

// Payoff vectors of both players at (x1, x2): player 1 receives A x2,
// player 2 receives -A^T x1.
inline void Payoffs(const PayoffMatrix& a, std::span<const double> lx1,
                    std::span<const double> lx2, Workspace& w,
                    std::span<double> g1, std::span<double> g2) {
  ExpInto(lx1, w.p1);
  ExpInto(lx2, w.p2);
  a.Apply(w.p2, g1);
  a.ApplyTransposed(w.p1, g2);
  Negate(g2);
}

inline void MwuLog(const PayoffMatrix& a, std::span<double> lx1,
                   std::span<double> lx2, double eta, Workspace& w) {
  Payoffs(a, lx1, lx2, w, w.g1, w.g2);
  LogStep(lx1, w.g1, eta, lx1);
  LogStep(lx2, w.g2, eta, lx2);
}

// Combined optimistic payoff 2 v_t - v_{t-1} for both players.
inline void OmwuPayoffs(const PayoffMatrix& a_now, const PayoffMatrix& a_prev,
                        std::span<const double> lx1, std::span<const double> lx2,
                        std::span<const double> px1, std::span<const double> px2,
                        Workspace& w) {
  Payoffs(a_now, lx1, lx2, w, w.g1, w.g2);
  Payoffs(a_prev, px1, px2, w, w.h1, w.h2);
  for (std::size_t i = 0; i < w.g1.size(); ++i) w.g1[i] = 2.0 * w.g1[i] - w.h1[i];
  for (std::size_t j = 0; j < w.g2.size(); ++j) w.g2[j] = 2.0 * w.g2[j] - w.h2[j];
}

// Extra-MWU: the half step lands in (w.l1, w.l2); the full step overwrites
// (lx1, lx2).
inline void ExtraLog(const PayoffMatrix& a, std::span<double> lx1,
                     std::span<double> lx2, double eta, Workspace& w) {
  Payoffs(a, lx1, lx2, w, w.g1, w.g2);
  LogStep(lx1, w.g1, eta, w.l1);
  LogStep(lx2, w.g2, eta, w.l2);
  Payoffs(a, w.l1, w.l2, w, w.h1, w.h2);
  LogStep(lx1, w.h1, eta, lx1);
  LogStep(lx2, w.h2, eta, lx2);
}

inline std::vector<double> Copy(std::span<const double> v) {
  return {v.begin(), v.end()};
}

inline void CheckDims(const PayoffMatrix& a, const JointState& s) {
  if (s.x1.size() != a.rows() || s.x2.size() != a.cols()) {
    throw InputError("joint state dimensions do not match the payoff matrix");
  }
}

}  // namespace detail

// One exponential-weights update x_i <- x_i exp(eta * payoff_i) / Z.
inline Simplex ExpWeightsStep(const Simplex& x, std::span<const double> payoff,
                              double eta) {
  detail::CheckEta(eta);
  if (payoff.size() != x.size()) throw InputError("payoff dimension mismatch");
  detail::CheckFinite(payoff, "payoff entries");
  std::vector<double> out(x.size());
  detail::LogStep(x.log_probs(), payoff, eta, out);
  return Simplex::FromLogWeights(std::move(out));
}
inline Simplex ExpWeightsStep(const Simplex& x, std::initializer_list<double> payoff,
                              double eta) {
  return ExpWeightsStep(x, std::span<const double>(payoff.begin(), payoff.size()),
                        eta);
}

inline JointState MwuJointStep(const PayoffMatrix& a, const JointState& state,
                               double eta) {
  detail::CheckEta(eta);
  detail::CheckDims(a, state);
  detail::Workspace w(a.rows(), a.cols());
  auto l1 = detail::Copy(state.x1.log_probs());
  auto l2 = detail::Copy(state.x2.log_probs());
  detail::MwuLog(a, l1, l2, eta, w);
  return {Simplex::FromLogWeights(std::move(l1)), Simplex::FromLogWeights(std::move(l2))};
}

// (x^t, x^{t-1}) for the optimistic rule.
struct OmwuState {
  JointState current;
  JointState previous;

  // x^{-1} defaults to x^0.
  static OmwuState Start(const JointState& x0) { return {x0, x0}; }
};

// x^{t+1} from x^t and x^{t-1} using A_t and A_{t-1} (A_{-1} is the last
// matrix of the schedule).
inline OmwuState OmwuJointStep(const PeriodicGame& game, std::int64_t t,
                               const OmwuState& state, double eta) {
  detail::CheckEta(eta);
  if (t < 0) throw InputError("OMWU time index must be non-negative");
  detail::CheckDims(game.at(t), state.current);
  detail::CheckDims(game.at(t), state.previous);
  detail::Workspace w(game.rows(), game.cols());
  detail::OmwuPayoffs(game.at(t), game.at(t - 1), state.current.x1.log_probs(),
                      state.current.x2.log_probs(), state.previous.x1.log_probs(),
                      state.previous.x2.log_probs(), w);
  std::vector<double> l1(game.rows()), l2(game.cols());
  detail::LogStep(state.current.x1.log_probs(), w.g1, eta, l1);
  detail::LogStep(state.current.x2.log_probs(), w.g2, eta, l2);
  return {{Simplex::FromLogWeights(std::move(l1)), Simplex::FromLogWeights(std::move(l2))},
          state.current};
}

struct ExtraStepResult {
  JointState half;
  JointState next;
};

// Extra-gradient step: the half step uses payoffs at `state`; the full step
// restarts from `state` with payoffs evaluated at the half step.
inline ExtraStepResult ExtraMwuJointStep(const PayoffMatrix& a,
                                         const JointState& state, double eta) {
  detail::CheckEta(eta);
  detail::CheckDims(a, state);
  detail::Workspace w(a.rows(), a.cols());
  auto l1 = detail::Copy(state.x1.log_probs());
  auto l2 = detail::Copy(state.x2.log_probs());
  detail::ExtraLog(a, l1, l2, eta, w);
  return {{Simplex::FromLogWeights(detail::Copy(w.l1)),
           Simplex::FromLogWeights(detail::Copy(w.l2))},
          {Simplex::FromLogWeights(std::move(l1)), Simplex::FromLogWeights(std::move(l2))}};
}

// The 2x2 alternating game: A_t = [[0,-1],[-1,0]] for even t and
// [[0,1],[1,0]] for odd t. Its unique common equilibrium is uniform.
inline PeriodicGame AlternatingGame2x2() {
  return PeriodicGame({PayoffMatrix{{0.0, -1.0}, {-1.0, 0.0}},
                       PayoffMatrix{{0.0, 1.0}, {1.0, 0.0}}});
}

// record_every used when the caller does not pick one.
inline std::int64_t DefaultRecordEvery(std::int64_t steps) {
  return steps <= 100000 ? 1 : 10;
}

// Streams the iteration of `algo` from t = 0 through t = steps without
// storing it. `visit(t, log_x1, log_x2)` sees every state including the
// initial one; returning false stops the run. Returns the last t visited.
// For OMWU, init.previous is x^{-1}; the other rules ignore it.
template <typename Visitor>
std::int64_t Simulate(const PeriodicGame& game, Algorithm algo, const OmwuState& init,
                      double eta, std::int64_t steps, Visitor&& visit) {
  detail::CheckEta(eta);
  if (steps < 1) throw InputError("steps must be >= 1");
  detail::CheckDims(game.at(0), init.current);
  detail::CheckDims(game.at(0), init.previous);

  auto l1 = detail::Copy(init.current.x1.log_probs());
  auto l2 = detail::Copy(init.current.x2.log_probs());
  auto pl1 = detail::Copy(init.previous.x1.log_probs());
  auto pl2 = detail::Copy(init.previous.x2.log_probs());
  detail::Workspace w(game.rows(), game.cols());

  if (!visit(std::int64_t{0}, std::span<const double>(l1), std::span<const double>(l2))) {
    return 0;
  }
  for (std::int64_t t = 0; t < steps; ++t) {
    const PayoffMatrix& a = game.at(t);
    switch (algo) {
      case Algorithm::kMwu:
        detail::MwuLog(a, l1, l2, eta, w);
        break;
      case Algorithm::kExtraMwu:
        detail::ExtraLog(a, l1, l2, eta, w);
        break;
      case Algorithm::kOmwu:
        detail::OmwuPayoffs(a, game.at(t - 1), l1, l2, pl1, pl2, w);
        pl1.swap(l1);
        pl2.swap(l2);
        // pl now holds x^t; build x^{t+1} from it.
        detail::LogStep(pl1, w.g1, eta, l1);
        detail::LogStep(pl2, w.g2, eta, l2);
        break;
    }
    if (!visit(t + 1, std::span<const double>(l1), std::span<const double>(l2))) {
      return t + 1;
    }
  }
  return steps;
}

// Runs `steps` rounds with A_t = matrices[t mod T] starting at t = 0. The
// initial state, every record_every-th state and the final state are
// recorded.
inline Trajectory RunTrajectory(const PeriodicGame& game, Algorithm algo,
                                const OmwuState& init, double eta,
                                std::int64_t steps, std::int64_t record_every,
                                const std::optional<JointState>& reference = std::nullopt) {
  if (record_every < 1) throw InputError("record_every must be >= 1");
  if (reference) detail::CheckDims(game.at(0), *reference);

  Trajectory traj;
  traj.game = game;
  traj.eta = eta;
  traj.algo = algo;
  traj.reference = reference;
  traj.record_every = record_every;
  if (steps >= 1) traj.steps.reserve(static_cast<std::size_t>(steps / record_every + 2));

  Simulate(game, algo, init, eta, steps,
           [&](std::int64_t t, std::span<const double> l1, std::span<const double> l2) {
             if (t % record_every != 0 && t != steps) return true;
             TrajectoryStep s;
             s.t = t;
             s.phase = game.phase(t);
             s.state = {Simplex::FromLogWeights(detail::Copy(l1)),
                        Simplex::FromLogWeights(detail::Copy(l2))};
             s.min_component = s.state.min_prob();
             if (reference) s.kl_to_ref = KlDivergence(*reference, s.state);
             traj.steps.push_back(std::move(s));
             return true;
           });
  return traj;
}

inline Trajectory RunTrajectory(const PeriodicGame& game, Algorithm algo,
                                const JointState& init, double eta,
                                std::int64_t steps, std::int64_t record_every,
                                const std::optional<JointState>& reference = std::nullopt) {
  return RunTrajectory(game, algo, OmwuState::Start(init), eta, steps,
                       record_every, reference);
}

enum class MatrixNorm { kSpectral, kFrobenius };

// Largest singular value by power iteration on A^T A (Rayleigh quotient,
// relative tolerance 1e-12, at most 500 iterations).
inline double SpectralNorm(const PayoffMatrix& a) {
  const std::size_t n = a.cols();
  std::vector<double> v(n), av(a.rows()), atav(n);
  // Non-symmetric start so zero row/column sums cannot annihilate it.
  for (std::size_t j = 0; j < n; ++j) v[j] = 1.0 + 0.5 * std::sqrt(static_cast<double>(j + 1));
  double lambda = 0.0;
  for (int it = 0; it < 500; ++it) {
    double nv = 0.0;
    for (double x : v) nv += x * x;
    nv = std::sqrt(nv);
    if (nv == 0.0) return 0.0;
    for (double& x : v) x /= nv;
    a.Apply(v, av);
    a.ApplyTransposed(av, atav);
    double next = 0.0;
    for (std::size_t j = 0; j < n; ++j) next += v[j] * atav[j];
    const bool done = it > 0 && std::abs(next - lambda) <= 1e-12 * std::abs(next);
    lambda = next;
    v = atav;
    if (done) break;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

inline double FrobeniusNorm(const PayoffMatrix& a) {
  double s = 0.0;
  for (double x : a.entries()) s += x * x;
  return std::sqrt(s);
}

// 1 / max_t ||A_t||: Extra-MWU step sizes strictly below this satisfy the
// convergence condition eta * max_t ||A_t|| < 1. +inf when every matrix is 0.
inline double MaxStepSize(const PeriodicGame& game,
                          MatrixNorm norm = MatrixNorm::kSpectral) {
  double worst = 0.0;
  for (const auto& a : game.matrices()) {
    worst = std::max(worst, norm == MatrixNorm::kSpectral ? SpectralNorm(a)
                                                         : FrobeniusNorm(a));
  }
  return worst == 0.0 ? kInf : 1.0 / worst;
}

// --- Reduced OMWU maps on the 2x2 alternating game -------------------------
//
// State (z1, z2, z3, z4) = (x_{1,1}^t, x_{1,1}^{t+1}, x_{2,1}^t, x_{2,1}^{t+1}).
// kEven advances from an even t (the new step uses the odd-time matrix),
// kOdd from an odd t. Composing kEven after kOdd maps
// (x^{2k-1}, x^{2k}) to (x^{2k+1}, x^{2k+2}).

enum class Parity { kEven, kOdd };

using ReducedState4 = std::array<double, 4>;

namespace detail {

// z e^a / (z e^a + (1 - z) e^b) as a rational function; defined for z
// slightly outside [0, 1], which finite differences at the boundary need.
template <typename T>
T ReweightRational(T z, T a, T b) {
  return z / (z + (T(1) - z) * std::exp(b - a));
}

// Same quantity via the logit, exact at z in {0, 1}.
inline double ReweightLogit(double z, double a, double b) {
  if (z <= 0.0) return 0.0;
  if (z >= 1.0) return 1.0;
  const double logit = std::log(z) - std::log1p(-z) + (a - b);
  return logit >= 0.0 ? 1.0 / (1.0 + std::exp(-logit))
                      : std::exp(logit) / (1.0 + std::exp(logit));
}

template <typename T, typename Reweight>
std::array<T, 4> ReducedMapImpl(Parity parity, const std::array<T, 4>& z, T eta,
                                Reweight reweight) {
  const T s = parity == Parity::kEven ? T(1) : T(-1);
  const T p1 = 2 * eta * z[3] + eta * z[2];
  const T p2 = 2 * eta * z[1] + eta * z[0];
  return {z[1], reweight(z[1], s * (3 * eta - p1), s * p1), z[3],
          reweight(z[3], s * (-3 * eta + p2), -s * p2)};
}

}  // namespace detail

// G1 (kEven) or G2 (kOdd), evaluated through logits. Coordinates must lie in
// [0, 1].
inline ReducedState4 OmwuReducedMap(Parity parity, const ReducedState4& z,
                                    double eta) {
  detail::CheckEta(eta);
  for (double v : z) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InputError("reduced state coordinates must lie in [0, 1]");
    }
  }
  return detail::ReducedMapImpl<double>(parity, z, eta, detail::ReweightLogit);
}

// G1 o G2 through the logit form.
inline ReducedState4 OmwuComposedMap(const ReducedState4& z, double eta) {
  return OmwuReducedMap(Parity::kEven, OmwuReducedMap(Parity::kOdd, z, eta), eta);
}

// The rational closed form of G1 o G2 without domain checks, for
// differentiation at points on the boundary of [0, 1]^4.
template <typename T>
std::array<T, 4> OmwuComposedMapAnalytic(const std::array<T, 4>& z, T eta) {
  auto rw = [](T zz, T a, T b) { return detail::ReweightRational<T>(zz, a, b); };
  return detail::ReducedMapImpl<T>(
      Parity::kEven, detail::ReducedMapImpl<T>(Parity::kOdd, z, eta, rw), eta, rw);
}

// Largest eta for which the KL-increase hypothesis p >= 16 sqrt(eta) holds,
// with p = min(|x_{1,1}^0 - 1/2|, |x_{2,1}^0 - 1/2|) / 2.
inline double OmwuEtaBoundForDivergence(const JointState& init) {
  if (init.x1.size() != 2 || init.x2.size() != 2) {
    throw InputError("divergence bound is defined for 2x2 games only");
  }
  const double p =
      0.5 * std::min(std::abs(init.x1.prob(0) - 0.5), std::abs(init.x2.prob(0) - 0.5));
  if (!(p > 0.0)) {
    throw InputError("initial state has a coordinate at the equilibrium (p = 0)");
  }
  const double r = p / 16.0;
  return r * r;
}

}  // namespace pmwu

#endif  // PMWU_DYNAMICS_HPP_
