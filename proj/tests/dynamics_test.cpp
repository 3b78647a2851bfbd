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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "pmwu/dynamics.hpp"
#include "pmwu/equilibrium.hpp"

namespace pmwu {
namespace {

// Values from tests/oracles/oracle.py (50-digit arithmetic).
constexpr double kOmwuX1[2] = {0.44925761191500372967, 0.55074238808499627033};
constexpr double kOmwuX2[2] = {0.45074261083466715762, 0.54925738916533284238};
constexpr double kExtraHalfX1[2] = {0.50499983333999973017, 0.49500016666000026983};
constexpr double kExtraNextX2[2] = {0.40024001598111807951, 0.59975998401888192049};

void ExpectSimplexNear(const Simplex& s, std::initializer_list<double> p, double tol) {
  ASSERT_EQ(s.size(), p.size());
  std::size_t i = 0;
  for (double v : p) EXPECT_NEAR(s.prob(i++), v, tol) << "coordinate " << i - 1;
}

JointState RandomInterior(std::size_t m, std::size_t n, std::mt19937_64& rng) {
  return {RandomInteriorSimplex(m, rng, 0.05), RandomInteriorSimplex(n, rng, 0.05)};
}

// Uniform with +0.05 on the last coordinate, renormalized.
JointState DefaultPerturbed() {
  return JointState::FromProbabilities({0.5 / 1.05, 0.55 / 1.05}, {0.5 / 1.05, 0.55 / 1.05});
}

TEST(ExpWeightsStep, ConstantPayoffIsIdentity) {
  const auto x = Simplex::Uniform(2);
  ExpectSimplexNear(ExpWeightsStep(x, {3.0, 3.0}, 0.7), {0.5, 0.5}, 1e-15);
  ExpectSimplexNear(ExpWeightsStep(x, {0.0, 0.0}, 5.0), {0.5, 0.5}, 1e-15);
}

TEST(ExpWeightsStep, ExactRatio) {
  ExpectSimplexNear(ExpWeightsStep(Simplex::Uniform(2), {1.0, 0.0}, std::log(3.0)),
                    {0.75, 0.25}, 1e-15);
}

TEST(ExpWeightsStep, RejectsBadArguments) {
  const auto x = Simplex::Uniform(2);
  EXPECT_THROW(ExpWeightsStep(x, {1.0, 2.0, 3.0}, 0.1), InputError);
  EXPECT_THROW(ExpWeightsStep(x, {1.0, std::nan("")}, 0.1), InputError);
  EXPECT_THROW(ExpWeightsStep(x, {1.0, 0.0}, 0.0), InputError);
}

TEST(OmwuJointStep, EquilibriumIsFixed) {
  const auto g = AlternatingGame2x2();
  const auto s = OmwuState::Start(JointState::Uniform(2, 2));
  for (std::int64_t t : {0, 1, 2, 7}) {
    const auto next = OmwuJointStep(g, t, s, 0.3);
    EXPECT_LE(MaxAbsDiff(next.current, s.current), 1e-15);
  }
}

TEST(OmwuJointStep, MatchesOracleOneStep) {
  const auto x = JointState::FromProbabilities({0.45, 0.55}, {0.45, 0.55});
  const auto next = OmwuJointStep(AlternatingGame2x2(), 0, OmwuState::Start(x), 0.01);
  ExpectSimplexNear(next.current.x1, {kOmwuX1[0], kOmwuX1[1]}, 1e-15);
  ExpectSimplexNear(next.current.x2, {kOmwuX2[0], kOmwuX2[1]}, 1e-15);
  EXPECT_LE(MaxAbsDiff(next.previous, x), 0.0);
}

TEST(OmwuJointStep, EqualsExpWeightsOnCombinedPayoff) {
  std::mt19937_64 rng(5);
  const auto gen = GenerateCommonEquilibriumSchedule(3, 4, 3, 77);
  for (int c = 0; c < 20; ++c) {
    const OmwuState s{RandomInterior(3, 4, rng), RandomInterior(3, 4, rng)};
    const double eta = 0.05;
    const std::int64_t t = c % 5;
    const auto next = OmwuJointStep(gen.game, t, s, eta);
    const auto& a = gen.game.at(t);
    const auto& ap = gen.game.at(t - 1);
    const auto v = a.Apply(s.current.x2.probabilities());
    const auto vp = ap.Apply(s.previous.x2.probabilities());
    const auto w = a.ApplyTransposed(s.current.x1.probabilities());
    const auto wp = ap.ApplyTransposed(s.previous.x1.probabilities());
    std::vector<double> g1(3), g2(4);
    for (std::size_t i = 0; i < 3; ++i) g1[i] = 2.0 * v[i] - vp[i];
    for (std::size_t j = 0; j < 4; ++j) g2[j] = -(2.0 * w[j] - wp[j]);
    EXPECT_LE(MaxAbsDiff(next.current.x1, ExpWeightsStep(s.current.x1, g1, eta)), 1e-15);
    EXPECT_LE(MaxAbsDiff(next.current.x2, ExpWeightsStep(s.current.x2, g2, eta)), 1e-15);
  }
}

TEST(OmwuJointStep, RejectsNegativeTimeAndBadDimensions) {
  const auto s = OmwuState::Start(JointState::Uniform(2, 2));
  EXPECT_THROW(OmwuJointStep(AlternatingGame2x2(), -1, s, 0.1), InputError);
  const auto bad = OmwuState::Start(JointState::Uniform(3, 2));
  EXPECT_THROW(OmwuJointStep(AlternatingGame2x2(), 0, bad, 0.1), InputError);
}

TEST(ExtraMwuJointStep, MatchesOracle) {
  const PayoffMatrix a{{0, 1}, {1, 0}};
  const auto r = ExtraMwuJointStep(a, JointState::FromProbabilities({0.5, 0.5}, {0.4, 0.6}), 0.1);
  ExpectSimplexNear(r.half.x1, {kExtraHalfX1[0], kExtraHalfX1[1]}, 1e-15);
  ExpectSimplexNear(r.half.x2, {0.4, 0.6}, 1e-15);
  ExpectSimplexNear(r.next.x1, {kExtraHalfX1[0], kExtraHalfX1[1]}, 1e-15);
  ExpectSimplexNear(r.next.x2, {kExtraNextX2[0], kExtraNextX2[1]}, 1e-15);
}

TEST(ExtraMwuJointStep, StationaryAtCommonEquilibrium) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto gen = GenerateCommonEquilibriumSchedule(3, 3, 2, seed);
    for (const auto& a : gen.game.matrices()) {
      const auto r = ExtraMwuJointStep(a, gen.equilibrium, 0.3);
      EXPECT_LE(MaxAbsDiff(r.half, gen.equilibrium), 1e-14);
      EXPECT_LE(MaxAbsDiff(r.next, gen.equilibrium), 1e-14);
    }
  }
}

TEST(ExtraMwuJointStep, ZeroMatrixIsIdentity) {
  const auto s = JointState::FromProbabilities({0.2, 0.8}, {0.6, 0.4});
  const auto r = ExtraMwuJointStep(PayoffMatrix::Zero(2, 2), s, 0.5);
  EXPECT_LE(MaxAbsDiff(r.half, s), 1e-16);
  EXPECT_LE(MaxAbsDiff(r.next, s), 1e-16);
}

TEST(UpdateRules, InvariantUnderPayoffShift) {
  std::mt19937_64 rng(21);
  for (int c = 0; c < 50; ++c) {
    const auto gen = GenerateCommonEquilibriumSchedule(3, 3, 2, 100 + c);
    std::vector<PayoffMatrix> shifted;
    for (const auto& a : gen.game.matrices()) shifted.push_back(a.Shifted(2.5 - c * 0.1));
    const PeriodicGame gs(shifted);
    const auto s = RandomInterior(3, 3, rng);
    const OmwuState os{s, RandomInterior(3, 3, rng)};
    EXPECT_LE(MaxAbsDiff(MwuJointStep(gen.game.at(0), s, 0.2), MwuJointStep(gs.at(0), s, 0.2)),
              1e-12);
    EXPECT_LE(MaxAbsDiff(OmwuJointStep(gen.game, 1, os, 0.2).current,
                         OmwuJointStep(gs, 1, os, 0.2).current),
              1e-12);
    EXPECT_LE(MaxAbsDiff(ExtraMwuJointStep(gen.game.at(0), s, 0.2).next,
                         ExtraMwuJointStep(gs.at(0), s, 0.2).next),
              1e-12);
  }
}

TEST(UpdateRules, InteriorStaysInterior) {
  std::mt19937_64 rng(8);
  const auto gen = GenerateCommonEquilibriumSchedule(4, 3, 3, 4);
  for (auto algo : {Algorithm::kMwu, Algorithm::kOmwu, Algorithm::kExtraMwu}) {
    const auto tr = RunTrajectory(gen.game, algo, RandomInterior(4, 3, rng), 0.3, 500, 1);
    for (const auto& s : tr.steps) {
      EXPECT_GT(s.min_component, 0.0);
      double t1 = 0.0, t2 = 0.0;
      for (double p : s.state.x1.probabilities()) t1 += p;
      for (double p : s.state.x2.probabilities()) t2 += p;
      EXPECT_NEAR(t1, 1.0, 1e-12);
      EXPECT_NEAR(t2, 1.0, 1e-12);
    }
  }
}

TEST(RunTrajectory, OneStepOnZeroGame) {
  const PeriodicGame g({PayoffMatrix::Zero(2, 2)});
  const auto s = JointState::FromProbabilities({0.3, 0.7}, {0.9, 0.1});
  const auto tr = RunTrajectory(g, Algorithm::kMwu, s, 0.1, 1, 1);
  ASSERT_EQ(tr.size(), 2u);
  EXPECT_EQ(tr.steps[0].t, 0);
  EXPECT_EQ(tr.steps[1].t, 1);
  EXPECT_LE(MaxAbsDiff(tr.steps[0].state, tr.steps[1].state), 0.0);
}

TEST(RunTrajectory, RecordsStrideAndFinalStep) {
  const auto tr = RunTrajectory(AlternatingGame2x2(), Algorithm::kExtraMwu,
                                JointState::Uniform(2, 2), 0.1, 25, 10);
  std::vector<std::int64_t> ts;
  for (const auto& s : tr.steps) {
    ts.push_back(s.t);
    EXPECT_EQ(s.phase, static_cast<std::size_t>(s.t % 2));
    EXPECT_TRUE(std::isnan(s.kl_to_ref));
  }
  EXPECT_EQ(ts, (std::vector<std::int64_t>{0, 10, 20, 25}));
}

TEST(RunTrajectory, MatchesRepeatedSingleSteps) {
  const auto gen = GenerateCommonEquilibriumSchedule(3, 3, 3, 12);
  std::mt19937_64 rng(2);
  const auto x0 = RandomInterior(3, 3, rng);
  const auto tr = RunTrajectory(gen.game, Algorithm::kOmwu, x0, 0.1, 30, 1);
  auto s = OmwuState::Start(x0);
  for (std::int64_t t = 0; t < 30; ++t) {
    s = OmwuJointStep(gen.game, t, s, 0.1);
    EXPECT_LE(MaxAbsDiff(s.current, tr.steps[t + 1].state), 1e-14);
  }
  JointState e = x0;
  const auto te = RunTrajectory(gen.game, Algorithm::kExtraMwu, x0, 0.1, 30, 1);
  for (std::int64_t t = 0; t < 30; ++t) {
    e = ExtraMwuJointStep(gen.game.at(t), e, 0.1).next;
    EXPECT_LE(MaxAbsDiff(e, te.steps[t + 1].state), 1e-14);
  }
}

TEST(RunTrajectory, BitIdenticalOnRepeat) {
  const auto x0 = JointState::FromProbabilities({0.45, 0.55}, {0.45, 0.55});
  const auto a = RunTrajectory(AlternatingGame2x2(), Algorithm::kOmwu, x0, 0.01, 2000, 7,
                               JointState::Uniform(2, 2));
  const auto b = RunTrajectory(AlternatingGame2x2(), Algorithm::kOmwu, x0, 0.01, 2000, 7,
                               JointState::Uniform(2, 2));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a.steps[k].kl_to_ref, b.steps[k].kl_to_ref);
    for (std::size_t i = 0; i < 2; ++i) {
      EXPECT_EQ(a.steps[k].state.x1.log_prob(i), b.steps[k].state.x1.log_prob(i));
      EXPECT_EQ(a.steps[k].state.x2.log_prob(i), b.steps[k].state.x2.log_prob(i));
    }
  }
}

TEST(RunTrajectory, ValidatesArguments) {
  const auto g = AlternatingGame2x2();
  const auto s = JointState::Uniform(2, 2);
  EXPECT_THROW(RunTrajectory(g, Algorithm::kMwu, s, 0.1, 0, 1), InputError);
  EXPECT_THROW(RunTrajectory(g, Algorithm::kMwu, s, 0.1, 10, 0), InputError);
  EXPECT_THROW(RunTrajectory(g, Algorithm::kMwu, s, -0.1, 10, 1), InputError);
  EXPECT_THROW(RunTrajectory(g, Algorithm::kMwu, JointState::Uniform(3, 2), 0.1, 10, 1),
               InputError);
}

TEST(RunTrajectory, ExtraConvergesOnAlternatingGame) {
  const auto tr = RunTrajectory(AlternatingGame2x2(), Algorithm::kExtraMwu,
                                JointState::Uniform(2, 2), 0.1, 10000, 10000);
  EXPECT_LE(MaxAbsDiff(tr.back().state, JointState::Uniform(2, 2)), 1e-6);
  const auto tp = RunTrajectory(AlternatingGame2x2(), Algorithm::kExtraMwu, DefaultPerturbed(),
                                0.5, 10000, 10000, JointState::Uniform(2, 2));
  EXPECT_LT(tp.back().kl_to_ref, 1e-6);
  EXPECT_LE(MaxAbsDiff(tp.back().state, JointState::Uniform(2, 2)), 1e-6);
}

TEST(RunTrajectory, OmwuMovesAwayFromEquilibrium) {
  const auto x0 = JointState::FromProbabilities({0.45, 0.55}, {0.45, 0.55});
  const auto tr = RunTrajectory(AlternatingGame2x2(), Algorithm::kOmwu, x0, 0.01, 10000, 10,
                                JointState::Uniform(2, 2));
  ASSERT_EQ(tr.steps[1].t, 10);
  EXPECT_GT(tr.back().kl_to_ref, tr.steps[1].kl_to_ref);
  EXPECT_LT(tr.back().min_component, tr.steps[1].min_component);
}

TEST(RunTrajectory, OmwuMovesAwayInEveryQuadrant) {
  for (double a : {0.45, 0.55}) {
    for (double b : {0.45, 0.55}) {
      const auto x0 = JointState::FromProbabilities({a, 1 - a}, {b, 1 - b});
      const auto tr = RunTrajectory(AlternatingGame2x2(), Algorithm::kOmwu, x0, 0.01, 20000,
                                    10, JointState::Uniform(2, 2));
      EXPECT_GT(tr.back().kl_to_ref, tr.steps[1].kl_to_ref) << a << " " << b;
      EXPECT_LT(tr.back().min_component, tr.steps[1].min_component) << a << " " << b;
    }
  }
}

TEST(MaxStepSize, PermutationMatrices) {
  EXPECT_NEAR(MaxStepSize(AlternatingGame2x2()), 1.0, 1e-12);
  EXPECT_NEAR(MaxStepSize(PeriodicGame({PayoffMatrix{{2, 0}, {0, 2}}})), 0.5, 1e-12);
}

TEST(MaxStepSize, MatchesOracleNorms) {
  const PeriodicGame exp2({PayoffMatrix{{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}},
                           PayoffMatrix{{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}},
                           PayoffMatrix{{1, -3, 2}, {-2, 1, 1}, {1, 2, -3}},
                           PayoffMatrix{{1, -2, 1}, {-2, 1, 1}, {1, 1, -2}}});
  EXPECT_NEAR(SpectralNorm(exp2.matrices()[0]), 1.7320508075688772935, 1e-11);
  EXPECT_NEAR(SpectralNorm(exp2.matrices()[2]), 5.0, 1e-11);
  EXPECT_NEAR(SpectralNorm(exp2.matrices()[3]), 3.0, 1e-11);
  EXPECT_NEAR(MaxStepSize(exp2), 0.2, 1e-12);
  EXPECT_NEAR(SpectralNorm(PayoffMatrix{{0, 0.75, 0.25}, {1.5, 0, 0}, {0, 0, 1}}), 1.5, 1e-11);
}

TEST(MaxStepSize, ZeroScheduleIsUnbounded) {
  EXPECT_EQ(MaxStepSize(PeriodicGame({PayoffMatrix::Zero(2, 3)})), kInf);
}

TEST(MaxStepSize, FrobeniusIsConservative) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto gen = GenerateCommonEquilibriumSchedule(3, 4, 2, seed);
    EXPECT_LE(MaxStepSize(gen.game, MatrixNorm::kFrobenius),
              MaxStepSize(gen.game, MatrixNorm::kSpectral) * (1 + 1e-12));
  }
}

TEST(ReducedMap, InteriorEquilibriumFixed) {
  const ReducedState4 h{0.5, 0.5, 0.5, 0.5};
  const auto out = OmwuComposedMap(h, 0.1);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(out[i], 0.5, 1e-15);
}

TEST(ReducedMap, BoundaryCurvePointFixed) {
  const double a = 0.3, eta = 0.1;
  const double w = a * std::exp(-3 * eta);
  const ReducedState4 z{0.0, 0.0, a, w / (w + 1 - a)};
  const auto out = OmwuComposedMap(z, eta);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(out[i], z[i], 1e-12);
}

TEST(ReducedMap, RejectsOutOfRange) {
  EXPECT_THROW(OmwuReducedMap(Parity::kEven, {0.5, 1.2, 0.5, 0.5}, 0.1), InputError);
  EXPECT_THROW(OmwuReducedMap(Parity::kOdd, {-0.1, 0.5, 0.5, 0.5}, 0.1), InputError);
}

TEST(ReducedMap, AgreesWithRationalForm) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int c = 0; c < 100; ++c) {
    const ReducedState4 z{u(rng), u(rng), u(rng), u(rng)};
    const auto a = OmwuComposedMap(z, 0.2);
    const auto b = OmwuComposedMapAnalytic<double>(z, 0.2);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(a[i], b[i], 1e-14);
  }
}

// (G1 o G2)^k applied to (x11^{-1}, x11^0, x21^{-1}, x21^0) must reproduce
// the full OMWU first coordinates at times (2k-1, 2k).
TEST(ReducedMap, MatchesFullOmwuTrajectory) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (double eta : {1e-3, 1e-2}) {
    for (int c = 0; c < 200; ++c) {
      const double a0 = u(rng), b0 = u(rng), am = u(rng), bm = u(rng);
      const OmwuState init{JointState::FromProbabilities({a0, 1 - a0}, {b0, 1 - b0}),
                           JointState::FromProbabilities({am, 1 - am}, {bm, 1 - bm})};
      const auto tr = RunTrajectory(AlternatingGame2x2(), Algorithm::kOmwu, init, eta, 200, 1);
      ReducedState4 z{am, a0, bm, b0};
      for (int k = 1; k <= 100; ++k) {
        z = OmwuComposedMap(z, eta);
        const auto& odd = tr.steps[2 * k - 1].state;
        const auto& even = tr.steps[2 * k].state;
        const double want[4] = {odd.x1.prob(0), even.x1.prob(0), odd.x2.prob(0), even.x2.prob(0)};
        for (int i = 0; i < 4; ++i) {
          ASSERT_NEAR(z[i], want[i], 1e-10 * std::abs(want[i])) << "k=" << k << " i=" << i;
        }
      }
    }
  }
}

TEST(EtaBound, Arithmetic) {
  EXPECT_NEAR(OmwuEtaBoundForDivergence(JointState::FromProbabilities({0.45, 0.55}, {0.45, 0.55})),
              (0.025 / 16) * (0.025 / 16), 1e-20);
  EXPECT_NEAR(OmwuEtaBoundForDivergence(JointState::FromProbabilities({0.2, 0.8}, {0.3, 0.7})),
              3.90625e-5, 1e-17);
  EXPECT_THROW(OmwuEtaBoundForDivergence(JointState::FromProbabilities({0.5, 0.5}, {0.4, 0.6})),
               InputError);
  EXPECT_THROW(OmwuEtaBoundForDivergence(JointState::Uniform(3, 2)), InputError);
}

}  // namespace
}  // namespace pmwu
