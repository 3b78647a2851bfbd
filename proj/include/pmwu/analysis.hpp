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

// Numerical checks of the convergence and divergence theory: Jacobians and
// spectra of the reduced OMWU map, the boundary fixed-point curve, and
// trajectory checkers that report every violated inequality.

#ifndef PMWU_ANALYSIS_HPP_
#define PMWU_ANALYSIS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "pmwu/core_types.hpp"
#include "pmwu/dynamics.hpp"
#include "pmwu/equilibrium.hpp"
#include "pmwu/linalg.hpp"

namespace pmwu {

using Complex = std::complex<double>;
using VectorMap = std::function<std::vector<double>(const std::vector<double>&)>;

// --- Spectra ----------------------------------------------------------------

// Central differences: column j = (f(p + h e_j) - f(p - h e_j)) / (2h).
inline SquareMatrix JacobianFd(const VectorMap& f, const std::vector<double>& point,
                               double h = 1e-6) {
  if (!(h > 0.0)) throw InputError("finite-difference step must be positive");
  const std::size_t n = point.size();
  SquareMatrix jac(n);
  std::vector<double> xp = point, xm = point;
  for (std::size_t j = 0; j < n; ++j) {
    xp[j] = point[j] + h;
    xm[j] = point[j] - h;
    const auto fp = f(xp);
    const auto fm = f(xm);
    if (fp.size() != n || fm.size() != n) {
      throw InputError("map output dimension must equal input dimension");
    }
    for (std::size_t i = 0; i < n; ++i) {
      jac(i, j) = (fp[i] - fm[i]) / (2.0 * h);
      if (!std::isfinite(jac(i, j))) throw NumericalError("map evaluation failed");
    }
    xp[j] = xm[j] = point[j];
  }
  return jac;
}

// det(M - lambda I) by complex LU with partial pivoting.
inline Complex CharPolyEval(const SquareMatrix& m, Complex lambda) {
  const std::size_t n = m.size();
  if (n > 8) throw InputError("characteristic polynomial limited to n <= 8");
  if (!m.all_finite() || !std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
    throw InputError("non-finite input to characteristic polynomial");
  }
  std::vector<Complex> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j) - (i == j ? lambda : 0.0);
  return detail::LuDeterminant(std::move(a), n);
}

// Coefficients c[0..n] of det(lambda I - M) = sum_k c[k] lambda^(n-k), c[0] = 1,
// by the Faddeev-LeVerrier recursion.
inline std::vector<double> CharPolyCoefficients(const SquareMatrix& m) {
  const std::size_t n = m.size();
  std::vector<double> c(n + 1, 0.0);
  c[0] = 1.0;
  SquareMatrix mk = m;
  for (std::size_t k = 1; k <= n; ++k) {
    c[k] = -mk.trace() / static_cast<double>(k);
    if (k == n) break;
    SquareMatrix shifted = mk;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) += c[k];
    mk = m * shifted;
  }
  return c;
}

namespace detail {

inline Complex Horner(const std::vector<double>& c, Complex z) {
  Complex acc = c[0];
  for (std::size_t k = 1; k < c.size(); ++k) acc = acc * z + c[k];
  return acc;
}

// Rounding level of a Horner evaluation at z.
inline double HornerNoise(const std::vector<double>& c, Complex z) {
  const double r = std::abs(z);
  double acc = 0.0;
  for (double ck : c) acc = acc * r + std::abs(ck);
  return 16.0 * std::numeric_limits<double>::epsilon() * acc;
}

}  // namespace detail

// Roots of det(lambda I - M) by Durand-Kerner (at most 1000 sweeps). A root
// is settled once its correction is below tol (1 + |z|) or its residual is at
// the rounding level; multiple roots only reach the latter. Sorted by
// modulus descending, ties by real then imaginary part descending.
inline std::vector<Complex> EigenvaluesSmall(const SquareMatrix& m, double tol = 1e-12,
                                             int max_iter = 1000) {
  const std::size_t n = m.size();
  if (n == 0) return {};
  if (n > 8) throw InputError("eigenvalue solver limited to n <= 8");
  if (!m.all_finite()) throw InputError("matrix entries must be finite");
  const auto c = CharPolyCoefficients(m);

  double bound = 0.0;
  for (std::size_t k = 1; k <= n; ++k) bound = std::max(bound, std::abs(c[k]));
  const double radius = std::min(1.0 + bound, 1e6);
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / n + 0.4;
    z[k] = std::polar(0.5 * radius, theta);
  }

  bool converged = false;
  for (int it = 0; it < max_iter && !converged; ++it) {
    converged = true;
    for (std::size_t k = 0; k < n; ++k) {
      const Complex pz = detail::Horner(c, z[k]);
      if (std::abs(pz) <= detail::HornerNoise(c, z[k])) continue;
      Complex denom = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) denom *= z[k] - z[j];
      }
      if (denom == 0.0) denom = Complex(1e-300, 0.0);
      const Complex delta = pz / denom;
      z[k] -= delta;
      if (std::abs(delta) > tol * (1.0 + std::abs(z[k]))) converged = false;
    }
  }
  if (!converged) {
    std::vector<double> residuals;
    for (const auto& zk : z) residuals.push_back(std::abs(detail::Horner(c, zk)));
    throw NumericalError("Durand-Kerner iteration did not converge", residuals);
  }
  std::sort(z.begin(), z.end(), [](const Complex& a, const Complex& b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return z;
}

// One inverse-iteration solve (M - shift I) v = e_last, scaled to unit
// 2-norm with a non-negative last coordinate.
inline std::vector<double> InverseIterationEigenvector(const SquareMatrix& m,
                                                       double shift) {
  const std::size_t n = m.size();
  std::vector<double> a(n * n), b(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j) - (i == j ? shift : 0.0);
  b[n - 1] = 1.0;
  auto v = detail::LuSolve(std::move(a), std::move(b), n, 0.0);
  if (!v) throw NumericalError("shifted matrix is exactly singular");
  double norm = 0.0;
  for (double x : *v) norm += x * x;
  norm = std::sqrt(norm);
  const double sign = (*v)[n - 1] < 0.0 ? -1.0 : 1.0;
  for (double& x : *v) x *= sign / norm;
  return *v;
}

// --- Reduced OMWU map: fixed points and analytic spectra ---------------------

// (0, 0, a, a e^{-3 eta} / (a e^{-3 eta} + 1 - a)), fixed by G1 o G2.
inline ReducedState4 BoundaryFixedPoint(double a, double eta) {
  if (!(a >= 0.0 && a <= 1.0)) throw InputError("a must lie in [0, 1]");
  detail::CheckEta(eta);
  const double w = a * std::exp(-3.0 * eta);
  return {0.0, 0.0, a, a == 0.0 ? 0.0 : w / (w + (1.0 - a))};
}

// Nontrivial eigenvalue e^{-2 eta a (1-a)(e^{3 eta}-1) / (a + (1-a) e^{3 eta})}
// of the Jacobian of G1 o G2 at BoundaryFixedPoint(a, eta).
inline double BoundaryContractionEigenvalue(double a, double eta) {
  const double e3 = std::exp(3.0 * eta);
  return std::exp(-2.0 * eta * a * (1.0 - a) * (e3 - 1.0) / (a + (1.0 - a) * e3));
}

// Eigenvector direction (0, 0, e^{-3 eta}(a + (1-a) e^{3 eta})^2, 1) for the
// unit eigenvalue at the boundary fixed point.
inline std::array<double, 4> BoundaryCentralEigenvector(double a, double eta) {
  const double s = a + (1.0 - a) * std::exp(3.0 * eta);
  return {0.0, 0.0, std::exp(-3.0 * eta) * s * s, 1.0};
}

// The two double eigenvalues eta^2/2 -+ sqrt((eta^2+eta+1)(eta^2-eta+1))/2 + 1/2
// of the Jacobian of G1 o G2 at (1/2, 1/2, 1/2, 1/2); the larger exceeds 1.
inline std::array<double, 2> InteriorEigenvalues(double eta) {
  const double e2 = eta * eta;
  const double r = std::sqrt((e2 + eta + 1.0) * (e2 - eta + 1.0));
  return {0.5 * e2 - 0.5 * r + 0.5, 0.5 * e2 + 0.5 * r + 0.5};
}

// Finite-difference Jacobian of G1 o G2 through its rational closed form, so
// points with z1 = z2 = 0 can be differentiated.
inline SquareMatrix ComposedMapJacobian(const ReducedState4& at, double eta,
                                        double h = 1e-6) {
  const VectorMap f = [eta](const std::vector<double>& z) {
    const auto out = OmwuComposedMapAnalytic<double>({z[0], z[1], z[2], z[3]}, eta);
    return std::vector<double>(out.begin(), out.end());
  };
  return JacobianFd(f, {at.begin(), at.end()}, h);
}

// If (1-v)/v <= ((1-u)/u) e^w then u - v <= w; if (1-v)/v >= ((1-u)/u) e^w
// then u - v >= w sqrt(eta) / 2. Valid for u, v in [1/2, 1 - sqrt(eta)] and
// w in (0, 1]. Returns false when an applicable implication fails.
inline bool RatioGapBoundHolds(double u, double v, double w, double eta) {
  const double lhs = (1.0 - v) / v;
  const double rhs = (1.0 - u) / u * std::exp(w);
  bool ok = true;
  if (lhs <= rhs) ok = ok && (u - v <= w);
  if (lhs >= rhs) ok = ok && (u - v >= 0.5 * w * std::sqrt(eta));
  return ok;
}

// --- Property reports --------------------------------------------------------

struct Violation {
  std::int64_t t = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // negative: by how much the inequality failed
  std::string item;
};

struct PropertyReport {
  std::string name;
  std::int64_t checked_steps = 0;
  std::vector<Violation> violations;
  bool passed = true;  // == violations.empty()
  std::map<std::string, double> metrics;

  void Add(Violation v) {
    violations.push_back(std::move(v));
    passed = false;
  }
};

namespace detail {

inline void RequireDense(const Trajectory& traj, const char* who) {
  if (traj.record_every != 1) {
    throw PreconditionError(std::string(who) + " requires record_every = 1");
  }
  for (std::size_t i = 0; i < traj.steps.size(); ++i) {
    if (traj.steps[i].t != static_cast<std::int64_t>(i)) {
      throw PreconditionError(std::string(who) + " requires a contiguous trajectory from t = 0");
    }
  }
}

inline void RequireAlternatingOmwu(const Trajectory& traj, const char* who) {
  if (traj.algo != Algorithm::kOmwu) {
    throw InputError(std::string(who) + " requires an OMWU trajectory");
  }
  if (!(traj.game == AlternatingGame2x2())) {
    throw InputError(std::string(who) + " requires the 2x2 alternating game");
  }
}

// ln(x_{i,1} / x_{i,2}) for player i at step k.
inline double LogRatio(const Trajectory& traj, std::size_t k, int player) {
  const Simplex& s = player == 1 ? traj.steps[k].state.x1 : traj.steps[k].state.x2;
  return s.log_prob(0) - s.log_prob(1);
}

inline double Second(const Trajectory& traj, std::size_t k, int player) {
  return player == 1 ? traj.steps[k].state.x1.prob(1) : traj.steps[k].state.x2.prob(1);
}

}  // namespace detail

// Six two-step ratio identities of OMWU on the alternating game, for every
// even t >= 2 with t + 2 recorded. Compared in log form; a violation is
// |lhs - rhs| > tol max(1, |lhs|, |rhs|).
inline PropertyReport CheckOmwuRatioIdentities(const Trajectory& traj, double eta,
                                               double tol = 1e-10) {
  detail::RequireAlternatingOmwu(traj, "ratio identities");
  detail::RequireDense(traj, "ratio identities");
  PropertyReport rep;
  rep.name = "omwu_ratio_identities";
  const auto r = [&](std::size_t k, int pl) { return detail::LogRatio(traj, k, pl); };
  const auto y = [&](std::size_t k, int pl) { return detail::Second(traj, k, pl); };
  double worst = 0.0;
  const std::size_t last = traj.steps.empty() ? 0 : traj.steps.size() - 1;
  for (std::size_t t = 2; t + 2 <= last; t += 2) {
    const double e = eta;
    const std::array<std::pair<double, double>, 6> items = {{
        {r(t + 1, 1), r(t - 1, 1) - 2 * e * (2 * y(t, 2) - y(t - 1, 2) - y(t - 2, 2))},
        {r(t + 1, 2), r(t - 1, 2) + 2 * e * (2 * y(t, 1) - y(t - 1, 1) - y(t - 2, 1))},
        {r(t + 2, 1), r(t, 1) + 2 * e * (2 * y(t + 1, 2) - y(t, 2) - y(t - 1, 2))},
        {r(t + 2, 2), r(t, 2) - 2 * e * (2 * y(t + 1, 1) - y(t, 1) - y(t - 1, 1))},
        {r(t + 2, 1), r(t + 1, 1) - 3 * e + 2 * e * (2 * y(t + 1, 2) + y(t, 2))},
        {r(t + 1, 2), r(t, 2) - 3 * e + 2 * e * (2 * y(t, 1) + y(t - 1, 1))},
    }};
    for (std::size_t i = 0; i < items.size(); ++i) {
      const auto [lhs, rhs] = items[i];
      const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
      const double err = std::abs(lhs - rhs) / scale;
      worst = std::max(worst, err);
      if (!(err <= tol)) {
        rep.Add({static_cast<std::int64_t>(t), lhs, rhs, (tol - err) * scale,
                 "item " + std::to_string(i + 1)});
      }
    }
    ++rep.checked_steps;
  }
  rep.metrics["max_relative_error"] = worst;
  return rep;
}

// Two-sided increment bounds near the boundary and the two-step KL increase
// KL(t+2) - KL(t) >= (3/8) p^2 eta^3, for even t >= 4 while every earlier
// second coordinate is at most 1 - sqrt(eta).
inline PropertyReport CheckOmwuIncrements(const Trajectory& traj, double p, double eta) {
  detail::RequireAlternatingOmwu(traj, "increment bounds");
  detail::RequireDense(traj, "increment bounds");
  if (!(p > 0.0 && p < 0.25)) throw PreconditionError("p must lie in (0, 1/4)");
  const double bound = (p / 16.0) * (p / 16.0);
  if (!(eta > 0.0) || eta > bound * (1.0 + 1e-12)) {
    throw PreconditionError("eta exceeds (p/16)^2");
  }
  if (traj.steps.empty()) throw PreconditionError("empty trajectory");
  const JointState& x0 = traj.steps.front().state;
  if (x0.x1.prob(1) < 0.5 + 2.0 * p - 1e-15 || x0.x2.prob(1) < 0.5 + 2.0 * p - 1e-15) {
    throw PreconditionError("initial second coordinates must be >= 1/2 + 2p");
  }

  PropertyReport rep;
  rep.name = "omwu_increments";
  const double lo3 = 0.75 * p * eta * eta * eta;
  const double lo32 = 1.5 * p * std::pow(eta, 1.5);
  const double hi2 = 12.0 * eta * eta;
  const double hi1 = 3.0 * eta;
  const double kl_lo = 0.375 * p * p * eta * eta * eta;
  const double cutoff = 1.0 - std::sqrt(eta);
  const JointState eq = JointState::Uniform(2, 2);

  const auto y = [&](std::size_t k, int pl) { return detail::Second(traj, k, pl); };
  std::map<std::string, double> min_seen;
  const auto check = [&](std::int64_t t, const std::string& item, double value,
                         double lo, double hi) {
    auto [it, fresh] = min_seen.emplace(item, value);
    if (!fresh) it->second = std::min(it->second, value);
    if (!(value >= lo)) rep.Add({t, value, lo, value - lo, item + " lower"});
    if (!(value <= hi)) rep.Add({t, value, hi, hi - value, item + " upper"});
  };

  const std::size_t last = traj.steps.size() - 1;
  // Earliest k whose second coordinate leaves [.., cutoff].
  std::size_t exit_k = last + 1;
  for (std::size_t k = 0; k <= last; ++k) {
    if (y(k, 1) > cutoff || y(k, 2) > cutoff) {
      exit_k = k;
      break;
    }
  }
  std::int64_t window_end = -1;
  for (std::size_t t = 4; t + 2 <= last && t <= exit_k; t += 2) {
    const auto ti = static_cast<std::int64_t>(t);
    check(ti, "1", y(t + 1, 2) - y(t - 1, 2), lo3, hi2);
    check(ti, "2", y(t, 2) - y(t + 1, 2), lo32, hi1);
    check(ti, "3", y(t + 2, 1) - y(t, 1), lo3, hi2);
    check(ti, "4", y(t + 1, 1) - y(t - 1, 1), lo3, kInf);
    check(ti, "5", y(t + 2, 2) - y(t, 2), lo3, kInf);
    check(ti, "6", y(t + 1, 1) - y(t + 2, 1), lo32, hi1);
    const double dkl = KlDivergence(eq, traj.steps[t + 2].state) -
                       KlDivergence(eq, traj.steps[t].state);
    check(ti, "kl", dkl, kl_lo, kInf);
    ++rep.checked_steps;
    window_end = ti;
  }
  for (const auto& [item, v] : min_seen) rep.metrics["min_increment_" + item] = v;
  rep.metrics["kl_increment_bound"] = kl_lo;
  rep.metrics["kl_increment_bound_statement"] = 2.0 * kl_lo;
  rep.metrics["window_end_t"] = static_cast<double>(window_end);
  return rep;
}

// Per-step KL(eq, x^{t+1}) <= KL(eq, x^t) + tol, with strict decrease while
// ||x^t - eq||_inf > 1e-8.
inline PropertyReport CheckExtraKlDecrease(const Trajectory& traj, const JointState& eq,
                                           double tol = 1e-12) {
  if (traj.algo != Algorithm::kExtraMwu) {
    throw InputError("KL decrease check requires an Extra-MWU trajectory");
  }
  detail::RequireDense(traj, "KL decrease");
  for (const auto& a : traj.game.matrices()) {
    if (!VerifyEquilibrium(a, eq.x1, eq.x2, 1e-9).ok) {
      throw PreconditionError("reference is not a common equilibrium of the schedule");
    }
  }
  if (eq.min_prob() <= 0.0) throw PreconditionError("reference must be fully mixed");
  if (!(traj.eta < MaxStepSize(traj.game))) {
    throw PreconditionError("eta must be below the step-size bound");
  }
  PropertyReport rep;
  rep.name = "extra_kl_decrease";
  double max_increase = -kInf;
  for (std::size_t k = 0; k + 1 < traj.steps.size(); ++k) {
    const double before = KlDivergence(eq, traj.steps[k].state);
    const double after = KlDivergence(eq, traj.steps[k + 1].state);
    const auto t = traj.steps[k].t;
    max_increase = std::max(max_increase, after - before);
    if (!(after <= before + tol)) rep.Add({t, after, before + tol, before + tol - after, "nonincrease"});
    if (MaxAbsDiff(traj.steps[k].state, eq) > 1e-8 && !(after < before)) {
      rep.Add({t, after, before, before - after, "strict"});
    }
    ++rep.checked_steps;
  }
  rep.metrics["max_step_change"] = max_increase;
  if (!traj.steps.empty()) rep.metrics["final_kl"] = KlDivergence(eq, traj.back().state);
  return rep;
}

// (i) KL(p, x') = KL(p, x) + KL(x, x') + <ln(x'/x), x - p>;
// (ii) with xd = exp-weights step of x along eta*y:
//      KL(p, xd) = KL(p, x) - KL(xd, x) + eta <y, xd - p>.
// Both to absolute tolerance `tol`. eta = 1 is the unscaled form.
inline PropertyReport CheckBregmanIdentities(const Simplex& p, const Simplex& x,
                                             const Simplex& x_prime,
                                             std::span<const double> y,
                                             double eta = 1.0, double tol = 1e-10) {
  const std::size_t m = p.size();
  if (x.size() != m || x_prime.size() != m || y.size() != m) {
    throw InputError("Bregman identity dimension mismatch");
  }
  if (p.min_prob() <= 0.0 || x.min_prob() <= 0.0 || x_prime.min_prob() <= 0.0) {
    throw InputError("Bregman identities require interior simplices");
  }
  PropertyReport rep;
  rep.name = "bregman_identities";
  const auto pp = p.probabilities();
  const auto px = x.probabilities();

  double inner1 = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    inner1 += (x_prime.log_prob(i) - x.log_prob(i)) * (px[i] - pp[i]);
  }
  const double lhs1 = KlDivergence(p, x_prime);
  const double rhs1 = KlDivergence(p, x) + KlDivergence(x, x_prime) + inner1;

  const Simplex xd = ExpWeightsStep(x, y, eta);
  const auto pd = xd.probabilities();
  double inner2 = 0.0;
  for (std::size_t i = 0; i < m; ++i) inner2 += y[i] * (pd[i] - pp[i]);
  const double lhs2 = KlDivergence(p, xd);
  const double rhs2 = KlDivergence(p, x) - KlDivergence(xd, x) + eta * inner2;

  const double r1 = std::abs(lhs1 - rhs1);
  const double r2 = std::abs(lhs2 - rhs2);
  if (!(r1 <= tol)) rep.Add({0, lhs1, rhs1, tol - r1, "three-points"});
  if (!(r2 <= tol)) rep.Add({1, lhs2, rhs2, tol - r2, "exp-weights step"});
  rep.checked_steps = 2;
  rep.metrics["residual_three_points"] = r1;
  rep.metrics["residual_step"] = r2;
  return rep;
}

// Both players at once; residuals are summed over the two components.
inline PropertyReport CheckBregmanIdentities(const JointState& p, const JointState& x,
                                             const JointState& x_prime,
                                             std::span<const double> y1,
                                             std::span<const double> y2,
                                             double eta = 1.0, double tol = 1e-10) {
  auto a = CheckBregmanIdentities(p.x1, x.x1, x_prime.x1, y1, eta, tol);
  auto b = CheckBregmanIdentities(p.x2, x.x2, x_prime.x2, y2, eta, tol);
  for (auto& v : b.violations) a.Add(std::move(v));
  a.checked_steps += b.checked_steps;
  for (const auto& [k, v] : b.metrics) a.metrics[k] = std::max(a.metrics[k], v);
  return a;
}

// --- Long-run behavior ---------------------------------------------------------

enum class OrbitVerdict { kConvergedPoint, kConvergedOrbit, kDivergingBoundary, kInconclusive };

inline std::string ToString(OrbitVerdict v) {
  switch (v) {
    case OrbitVerdict::kConvergedPoint: return "converged_point";
    case OrbitVerdict::kConvergedOrbit: return "converged_orbit";
    case OrbitVerdict::kDivergingBoundary: return "diverging_boundary";
    case OrbitVerdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

struct OrbitReport {
  OrbitVerdict verdict = OrbitVerdict::kInconclusive;
  double period_gap = kNaN;       // max ||x^{t+P} - x^t||_inf over the window
  double consecutive_gap = kNaN;  // max ||x^{t+1} - x^t||_inf over the window
  double final_min_component = kNaN;
};

// Classifies the final 10 periods of a dense trajectory. Boundary
// divergence: min_component sampled at one phase is nonincreasing across the
// window and ends below 1e-6.
inline OrbitReport DetectPeriodicOrbit(const Trajectory& traj, std::size_t period,
                                       double tol_orbit = 1e-8,
                                       double tol_nontrivial = 1e-3) {
  if (period < 1) throw InputError("period must be >= 1");
  detail::RequireDense(traj, "orbit detection");
  const std::size_t window = 10 * period;
  if (traj.steps.size() < window + 1) {
    throw InputError("trajectory shorter than 10 periods");
  }
  const std::size_t last = traj.steps.size() - 1;
  const std::size_t first = last - window;
  OrbitReport rep;
  rep.period_gap = 0.0;
  rep.consecutive_gap = 0.0;
  for (std::size_t k = first; k < last; ++k) {
    rep.consecutive_gap = std::max(
        rep.consecutive_gap, MaxAbsDiff(traj.steps[k].state, traj.steps[k + 1].state));
    if (k + period <= last) {
      rep.period_gap = std::max(
          rep.period_gap, MaxAbsDiff(traj.steps[k].state, traj.steps[k + period].state));
    }
  }
  rep.final_min_component = traj.steps[last].min_component;
  bool shrinking = true;
  for (std::size_t k = first; k + period <= last; k += period) {
    if (traj.steps[k + period].min_component > traj.steps[k].min_component) {
      shrinking = false;
    }
  }
  if (rep.period_gap <= tol_orbit && rep.consecutive_gap <= tol_orbit) {
    rep.verdict = OrbitVerdict::kConvergedPoint;
  } else if (rep.period_gap <= tol_orbit && rep.consecutive_gap >= tol_nontrivial) {
    rep.verdict = OrbitVerdict::kConvergedOrbit;
  } else if (shrinking && rep.final_min_component < 1e-6) {
    rep.verdict = OrbitVerdict::kDivergingBoundary;
  }
  return rep;
}

}  // namespace pmwu

#endif  // PMWU_ANALYSIS_HPP_
