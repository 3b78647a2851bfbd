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

#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "pmwu/equilibrium.hpp"

namespace pmwu {
namespace {

const PayoffMatrix kRps{{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}};
const PayoffMatrix kExp1Even{{0, 0.75, 0.25}, {1.5, 0, 0}, {0, 0, 1}};

void ExpectProbs(const Simplex& s, std::initializer_list<double> p, double tol) {
  std::size_t i = 0;
  for (double v : p) EXPECT_NEAR(s.prob(i++), v, tol);
}

TEST(SolveZeroSum, RockPaperScissors) {
  const auto r = SolveZeroSum(kRps);
  ExpectProbs(r.x_star, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 1e-12);
  ExpectProbs(r.y_star, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 1e-12);
  EXPECT_NEAR(r.value, 0.0, 1e-14);
  EXPECT_TRUE(r.fully_mixed);
}

// Hand solution: x = (1/2, 1/4, 1/4), y = (1/4, 3/8, 3/8), value 3/8.
TEST(SolveZeroSum, ThreeByThreeWithNonzeroValue) {
  const auto r = SolveZeroSum(kExp1Even);
  ExpectProbs(r.x_star, {0.5, 0.25, 0.25}, 1e-12);
  ExpectProbs(r.y_star, {0.25, 0.375, 0.375}, 1e-12);
  EXPECT_NEAR(r.value, 0.375, 1e-12);
  EXPECT_EQ(VerifyEquilibrium(kExp1Even, r.x_star, r.y_star).gap, 0.0);
}

TEST(SolveZeroSum, PureSaddlePoint) {
  const PayoffMatrix a{{3, 1}, {4, 2}};
  const auto r = SolveZeroSum(a);
  ExpectProbs(r.x_star, {0.0, 1.0}, 0.0);
  ExpectProbs(r.y_star, {0.0, 1.0}, 0.0);
  EXPECT_EQ(r.value, 2.0);
  EXPECT_FALSE(r.fully_mixed);
}

TEST(SolveZeroSum, RectangularGame) {
  // Matching pennies with a dominated third column.
  const PayoffMatrix a{{1, -1, 5}, {-1, 1, 5}};
  const auto r = SolveZeroSum(a);
  ExpectProbs(r.x_star, {0.5, 0.5}, 1e-12);
  ExpectProbs(r.y_star, {0.5, 0.5, 0.0}, 1e-12);
  EXPECT_NEAR(r.value, 0.0, 1e-12);
}

TEST(SolveZeroSum, RejectsLargeGames) {
  EXPECT_THROW(SolveZeroSum(PayoffMatrix::Zero(7, 2)), InputError);
}

TEST(SolveZeroSum, AgreesWithVerifierOnRandomGames) {
  std::mt19937_64 rng(2024);
  for (int c = 0; c < 100; ++c) {
    const std::size_t m = 2 + c % 4, n = 2 + (c / 4) % 4;
    const auto a = RandomPayoffMatrix(m, n, rng);
    const auto r = SolveZeroSum(a);
    const auto check = VerifyEquilibrium(a, r.x_star, r.y_star, 1e-9);
    EXPECT_TRUE(check.ok) << "case " << c << " gap " << check.gap;
    EXPECT_LE(r.gap, 1e-9);
  }
}

TEST(VerifyEquilibrium, DetectsNonEquilibrium) {
  const auto u = Simplex::Uniform(3);
  const auto pure = Simplex::FromProbabilities({1.0, 0.0, 0.0});
  EXPECT_TRUE(VerifyEquilibrium(kRps, u, u).ok);
  const auto bad = VerifyEquilibrium(kRps, pure, u);
  EXPECT_FALSE(bad.ok);
  EXPECT_NEAR(bad.gap, 1.0, 1e-15);
  EXPECT_THROW(VerifyEquilibrium(kRps, Simplex::Uniform(2), u), InputError);
}

TEST(GenerateCommonEquilibriumGame, TargetIsEquilibrium) {
  std::mt19937_64 rng(31);
  for (int c = 0; c < 50; ++c) {
    const std::size_t m = 2 + c % 4, n = 2 + (c / 3) % 4;
    const auto x = RandomInteriorSimplex(m, rng);
    const auto y = RandomInteriorSimplex(n, rng);
    const auto a = GenerateCommonEquilibriumGame(x, y, RandomPayoffMatrix(m, n, rng));
    EXPECT_LE(VerifyEquilibrium(a, x, y).gap, 1e-12);
    for (double v : a.Apply(y.probabilities())) EXPECT_NEAR(v, 0.0, 1e-12);
    for (double v : a.ApplyTransposed(x.probabilities())) EXPECT_NEAR(v, 0.0, 1e-12);
  }
}

TEST(GenerateCommonEquilibriumGame, RejectsBoundaryTarget) {
  const auto b = PayoffMatrix::Zero(2, 2);
  EXPECT_THROW(GenerateCommonEquilibriumGame(Simplex::FromProbabilities({1.0, 0.0}),
                                             Simplex::Uniform(2), b),
               InputError);
  EXPECT_THROW(GenerateCommonEquilibriumGame(Simplex::Uniform(3), Simplex::Uniform(2), b),
               InputError);
}

TEST(GenerateCommonEquilibriumSchedule, DeterministicAndShared) {
  const auto a = GenerateCommonEquilibriumSchedule(3, 4, 3, 7);
  const auto b = GenerateCommonEquilibriumSchedule(3, 4, 3, 7);
  EXPECT_TRUE(a.game == b.game);
  EXPECT_EQ(MaxAbsDiff(a.equilibrium, b.equilibrium), 0.0);
  EXPECT_FALSE(a.game == GenerateCommonEquilibriumSchedule(3, 4, 3, 8).game);
  for (const auto& m : a.game.matrices()) {
    EXPECT_LE(VerifyEquilibrium(m, a.equilibrium.x1, a.equilibrium.x2).gap, 1e-12);
  }
}

TEST(CommonEquilibrium, FoundForSharedSchedule) {
  const auto gen = GenerateCommonEquilibriumSchedule(3, 3, 4, 11);
  const auto r = CommonEquilibrium(gen.game);
  ASSERT_TRUE(r.has_value());
  EXPECT_LE(MaxAbsDiff(r->joint(), gen.equilibrium), 1e-9);
}

TEST(CommonEquilibrium, AbsentWithoutSharedEquilibrium) {
  const PeriodicGame g({kRps, PayoffMatrix{{0, 0.25, 0.75}, {1.5, 0, 0}, {0, 1, 0}}});
  EXPECT_FALSE(CommonEquilibrium(g).has_value());
}

}  // namespace
}  // namespace pmwu
