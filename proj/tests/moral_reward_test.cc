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

#include "moralsim/moral_reward.h"

#include <cstdlib>

#include <stdexcept>

#include "doctest.h"
#include "moralsim/rng.h"

namespace moralsim {
namespace {

// Independent oracle: the pairwise Gini score in exact integer rational
// arithmetic, evaluated as a double only at the end.
double RationalGini(long r1, long r2) {
  const long num = std::labs(r1 - r2);
  const long den = r1 + r2;
  REQUIRE(den > 0);
  return 1.0 - static_cast<double>(num) / static_cast<double>(den);
}

RewardContext Ctx(Action prev_opp, Action own, int r_self, int r_opp) {
  return {prev_opp, own, r_self, r_opp};
}

constexpr Action C = Action::kCooperate;
constexpr Action D = Action::kDefect;

TEST_CASE("pairwise Gini score") {
  CHECK(GiniPair(3, 3) == 1.0);
  CHECK(GiniPair(4, 1) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(GiniPair(4, 1) == doctest::Approx(RationalGini(4, 1)).epsilon(1e-15));
  CHECK(GiniPair(2, 5) ==
        doctest::Approx(RationalGini(2, 5)).epsilon(1e-15));
  CHECK(GiniPair(2, 5) == doctest::Approx(1.0 - 3.0 / 7.0).epsilon(1e-15));
  CHECK_THROWS_AS(GiniPair(0, 0), std::domain_error);
  CHECK_THROWS_AS(GiniPair(1, -1), std::domain_error);
}

TEST_CASE("Gini symmetry and self-equality over randomized payoffs") {
  Rng rng(2026);
  for (int i = 0; i < 2000; ++i) {
    const int r1 = 1 + static_cast<int>(rng() % 1000);
    const int r2 = 1 + static_cast<int>(rng() % 1000);
    CHECK(GiniPair(r1, r2) == GiniPair(r2, r1));
    CHECK(GiniPair(r1, r1) == 1.0);
    const double g = GiniPair(r1, r2);
    CHECK(g >= 0.0);
    CHECK(g <= 1.0);
    CHECK(g == doctest::Approx(RationalGini(r1, r2)).epsilon(1e-15));
  }
}

TEST_CASE("intrinsic reward definitions") {
  // Utilitarian: sum of the two payoffs (IPD C vs D -> 1 + 4).
  CHECK(IntrinsicReward(MoralFramework::Utilitarian(), Ctx(C, C, 1, 4)) == 5.0);
  // Deontological: -xi only for defecting on a previous cooperator.
  CHECK(IntrinsicReward(MoralFramework::Deontological(5), Ctx(C, D, 4, 1)) ==
        -5.0);
  CHECK(IntrinsicReward(MoralFramework::Deontological(5), Ctx(D, D, 2, 2)) ==
        0.0);
  CHECK(IntrinsicReward(MoralFramework::Deontological(5), Ctx(C, C, 3, 3)) ==
        0.0);
  // Kindness: xi for cooperating, regardless of payoffs.
  CHECK(IntrinsicReward(MoralFramework::VirtueKindness(5), Ctx(D, C, 1, 4)) ==
        5.0);
  CHECK(IntrinsicReward(MoralFramework::VirtueKindness(5), Ctx(C, D, 4, 1)) ==
        0.0);
  // Equality: the Gini score.
  CHECK(IntrinsicReward(MoralFramework::VirtueEquality(), Ctx(D, C, 3, 3)) ==
        1.0);
  // Mixed at beta=0.5, xi_hat=1, mutual cooperation: 0.5 * 1 + 0.5 * 1.
  CHECK(IntrinsicReward(MoralFramework::VirtueMixed(0.5, 1.0),
                        Ctx(C, C, 3, 3)) == 1.0);
  // Selfish: identity with the extrinsic payoff.
  CHECK(IntrinsicReward(MoralFramework::Selfish(), Ctx(D, D, 4, 1)) == 4.0);
}

TEST_CASE("reward ranges and norm independence over randomized contexts") {
  Rng rng(77);
  for (int i = 0; i < 2000; ++i) {
    const Action prev = static_cast<Action>(NextBit(rng));
    const Action own = static_cast<Action>(NextBit(rng));
    const int r_self = 1 + static_cast<int>(rng() % 9);
    const int r_opp = 1 + static_cast<int>(rng() % 9);
    const RewardContext ctx = Ctx(prev, own, r_self, r_opp);

    const double equality =
        IntrinsicReward(MoralFramework::VirtueEquality(), ctx);
    CHECK(equality >= 0.0);
    CHECK(equality <= 1.0);

    const double mixed = IntrinsicReward(MoralFramework::VirtueMixed(), ctx);
    CHECK(mixed >= 0.0);
    CHECK(mixed <= 1.0);

    const double deon =
        IntrinsicReward(MoralFramework::Deontological(5), ctx);
    CHECK((deon == 0.0 || deon == -5.0));
    const double kind = IntrinsicReward(MoralFramework::VirtueKindness(5), ctx);
    CHECK((kind == 0.0 || kind == 5.0));

    CHECK(IntrinsicReward(MoralFramework::Utilitarian(), ctx) ==
          static_cast<double>(r_self + r_opp));
    CHECK(IntrinsicReward(MoralFramework::Selfish(), ctx) ==
          static_cast<double>(r_self));

    // Norm rewards ignore the payoffs entirely.
    const RewardContext other = Ctx(prev, own, 7, 2);
    CHECK(deon == IntrinsicReward(MoralFramework::Deontological(5), other));
    CHECK(kind == IntrinsicReward(MoralFramework::VirtueKindness(5), other));
  }
}

TEST_CASE("mixed reward endpoints collapse to the pure virtues") {
  Rng rng(78);
  for (int i = 0; i < 2000; ++i) {
    const Action prev = static_cast<Action>(NextBit(rng));
    const Action own = static_cast<Action>(NextBit(rng));
    const int r_self = 1 + static_cast<int>(rng() % 9);
    const int r_opp = 1 + static_cast<int>(rng() % 9);
    const RewardContext ctx = Ctx(prev, own, r_self, r_opp);
    const double xi_hat = static_cast<double>(rng() % 101) / 100.0;

    CHECK(IntrinsicReward(MoralFramework::VirtueMixed(1.0, xi_hat), ctx) ==
          IntrinsicReward(MoralFramework::VirtueEquality(), ctx));
    const double expect_kind = own == C ? xi_hat : 0.0;
    CHECK(IntrinsicReward(MoralFramework::VirtueMixed(0.0, xi_hat), ctx) ==
          expect_kind);
  }
}

TEST_CASE("framework labels round-trip") {
  for (const char* label :
       {"Selfish", "Utilitarian", "Deontological", "VirtueEquality",
        "VirtueKindness", "VirtueMixed", "Deontological(xi=3)",
        "VirtueMixed(beta=0.8)", "VirtueMixed(beta=0.2,xi_hat=0.5)"}) {
    const MoralFramework parsed = MoralFrameworkFromString(label);
    CHECK(MoralFrameworkFromString(ToString(parsed)) == parsed);
  }
  CHECK(ToString(MoralFrameworkFromString("VirtueMixed(beta=0.8)")) ==
        "VirtueMixed(beta=0.8)");
  CHECK(ToString(MoralFramework::VirtueMixed()) == "VirtueMixed");

  CHECK_THROWS_AS(MoralFrameworkFromString("Egoist"), std::invalid_argument);
  CHECK_THROWS_AS(MoralFrameworkFromString("VirtueMixed(beta=2)"),
                  std::invalid_argument);
  CHECK_THROWS_AS(MoralFrameworkFromString("Deontological(xi=0)"),
                  std::invalid_argument);
  CHECK_THROWS_AS(MoralFrameworkFromString("VirtueMixed(foo=1)"),
                  std::invalid_argument);
}

}  // namespace
}  // namespace moralsim
