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

#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "pmwu/harness.hpp"
#include "json.hpp"

// Guards the built-in schedules against silent edits: the literal matrices
// live in a JSON fixture that is read independently of the registry.
namespace pmwu {
namespace {

TEST(BuiltinFixture, MatchesRegistry) {
  std::ifstream in(std::string(PMWU_FIXTURE_DIR) + "/builtin_matrices.json");
  ASSERT_TRUE(in.good());
  const auto doc = nlohmann::json::parse(in);
  ASSERT_EQ(doc.size(), BuiltinExperiments().size());
  for (const auto& e : BuiltinExperiments()) {
    ASSERT_TRUE(doc.contains(e.name)) << e.name;
    const auto& entry = doc[e.name];
    ASSERT_EQ(entry["period"].get<std::size_t>(), e.game.period());
    std::vector<PayoffMatrix> mats;
    for (const auto& m : entry["matrices"]) {
      mats.push_back(PayoffMatrix::FromRows(m.get<std::vector<std::vector<double>>>()));
    }
    EXPECT_TRUE(PeriodicGame(mats) == e.game) << e.name;
  }
}

}  // namespace
}  // namespace pmwu
