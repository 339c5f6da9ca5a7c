// Copyright 2026 The moralsim Authors
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

#include "moralsim/static_agents.h"

#include <stdexcept>

#include "doctest.h"

namespace moralsim {
namespace {

constexpr Action C = Action::kCooperate;
constexpr Action D = Action::kDefect;

TEST_CASE("strategy definitions") {
  Rng rng(3);
  for (Action prev : kAllActions) {
    CHECK(StaticAction(StaticStrategy::kAlwaysCooperate, prev, rng) == C);
    CHECK(StaticAction(StaticStrategy::kAlwaysDefect, prev, rng) == D);
    CHECK(StaticAction(StaticStrategy::kTitForTat, prev, rng) == prev);
  }
}

TEST_CASE("random strategy is uniform and ignores the opponent") {
  Rng rng(5);
  const int n = 10000;
  // Counts split by observed opponent action for the independence check.
  int cooperate[2] = {0, 0};
  int total[2] = {0, 0};
  for (int i = 0; i < 2 * n; ++i) {
    const Action prev = static_cast<Action>(i % 2);
    total[i % 2] += 1;
    if (StaticAction(StaticStrategy::kRandom, prev, rng) == C) {
      cooperate[i % 2] += 1;
    }
  }
  const double freq =
      static_cast<double>(cooperate[0] + cooperate[1]) / (2.0 * n);
  CHECK(freq >= 0.47);
  CHECK(freq <= 0.53);

  // 2x2 chi-square of action vs observed opponent action; 10.83 is the
  // 99.9th percentile at one degree of freedom.
  double chi2 = 0.0;
  for (int g = 0; g < 2; ++g) {
    const double p = static_cast<double>(cooperate[0] + cooperate[1]) /
                     static_cast<double>(total[0] + total[1]);
    for (const bool coop : {true, false}) {
      const double expected =
          static_cast<double>(total[g]) * (coop ? p : 1.0 - p);
      const double observed =
          coop ? cooperate[g] : total[g] - cooperate[g];
      chi2 += (observed - expected) * (observed - expected) / expected;
    }
  }
  CHECK(chi2 < 10.83);
}

TEST_CASE("strategy names round-trip") {
  for (StaticStrategy strategy :
       {StaticStrategy::kAlwaysCooperate, StaticStrategy::kAlwaysDefect,
        StaticStrategy::kTitForTat, StaticStrategy::kRandom}) {
    CHECK(StaticStrategyFromString(ToString(strategy)) == strategy);
  }
  CHECK(ToString(StaticStrategy::kAlwaysCooperate) == "AC");
  CHECK_THROWS_AS(StaticStrategyFromString("GTFT"), std::invalid_argument);
}

}  // namespace
}  // namespace moralsim
