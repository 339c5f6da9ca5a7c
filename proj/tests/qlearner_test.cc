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

#include "moralsim/qlearner.h"

#include <cmath>

#include <stdexcept>

#include "doctest.h"

namespace moralsim {
namespace {

constexpr Action C = Action::kCooperate;
constexpr Action D = Action::kDefect;
constexpr ObservedState kCC{C, C};
constexpr ObservedState kCD{C, D};
constexpr ObservedState kDC{D, C};

TEST_CASE("linear decay hits its endpoints exactly and decreases strictly") {
  const auto linear = ExplorationSchedule::LinearDecay();
  CHECK(EpsilonAt(linear, 0, 10000) == 1.0);
  CHECK(EpsilonAt(linear, 9999, 10000) == 0.0);
  double prev = 2.0;
  for (long t = 0; t < 200; ++t) {
    const double eps = EpsilonAt(linear, t, 200);
    CHECK(eps < prev);
    CHECK(eps >= 0.0);
    CHECK(eps <= 1.0);
    prev = eps;
  }
  CHECK(EpsilonAt(ExplorationSchedule::Constant(0.05), 4321, 10000) == 0.05);
  CHECK_THROWS_AS(EpsilonAt(linear, 10000, 10000), std::domain_error);
  CHECK_THROWS_AS(EpsilonAt(linear, -1, 10000), std::domain_error);
  CHECK_THROWS_AS(EpsilonAt(linear, 0, 1), std::domain_error);
}

TEST_CASE("schedule wire form round-trips") {
  CHECK(ScheduleFromString("linear") == ExplorationSchedule::LinearDecay());
  CHECK(ScheduleFromString("constant:0.05") ==
        ExplorationSchedule::Constant(0.05));
  CHECK(ToString(ExplorationSchedule::Constant(0.05)) == "constant:0.05");
  CHECK_THROWS_AS(ScheduleFromString("cosine"), std::invalid_argument);
  CHECK_THROWS_AS(ScheduleFromString("constant:1.5"), std::invalid_argument);
}

TEST_CASE("greedy selection picks the argmax at eps=0") {
  QTable q;
  q.at(kCC, C) = 0.7;
  q.at(kCC, D) = 0.2;
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    CHECK(SelectAction(q, kCC, 0.0, rng) == C);
  }
}

TEST_CASE("eps=1 explores uniformly") {
  QTable q;
  q.at(kCC, C) = 100.0;  // exploration must ignore the values
  Rng rng(42);
  int cooperate = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    if (SelectAction(q, kCC, 1.0, rng) == C) ++cooperate;
  }
  const double freq = static_cast<double>(cooperate) / n;
  CHECK(freq >= 0.47);
  CHECK(freq <= 0.53);
}

TEST_CASE("exact ties break uniformly at eps=0") {
  QTable q;  // all zero
  Rng rng(7);
  int cooperate = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    if (SelectAction(q, kCC, 0.0, rng) == C) ++cooperate;
  }
  const double freq = static_cast<double>(cooperate) / n;
  CHECK(freq >= 0.47);
  CHECK(freq <= 0.53);
}

TEST_CASE("update rule matches hand evaluation") {
  LearnerParams params;
  params.alpha = 0.01;
  params.gamma = 0.9;

  QTable q;
  QUpdate(q, kCC, C, 3.0, kCD, params);
  CHECK(q.at(kCC, C) == doctest::Approx(0.03).epsilon(1e-12));

  QTable zero;
  QTable untouched = zero;
  QUpdate(zero, kCC, C, 0.0, kCD, params);
  CHECK(zero == untouched);  // zero TD error

  params.alpha = 0.5;
  QTable q2;
  q2.at(kCC, C) = 1.0;
  q2.at(kCD, C) = 2.0;
  QUpdate(q2, kCC, C, 1.0, kCD, params);
  CHECK(q2.at(kCC, C) == doctest::Approx(1.9).epsilon(1e-12));
}

TEST_CASE("update touches exactly one entry") {
  Rng rng(9);
  LearnerParams params;
  for (int i = 0; i < 1000; ++i) {
    QTable q;
    for (int s = 0; s < kNumStates; ++s) {
      for (Action a : kAllActions) {
        q.at(StateFromIndex(s), a) = NextUnit(rng) * 10 - 5;
      }
    }
    const ObservedState s = StateFromIndex(NextTwoBits(rng));
    const Action a = static_cast<Action>(NextBit(rng));
    const ObservedState s_next = StateFromIndex(NextTwoBits(rng));
    QTable before = q;
    QUpdate(q, s, a, NextUnit(rng) * 8 - 4, s_next, params);
    for (int si = 0; si < kNumStates; ++si) {
      for (Action ai : kAllActions) {
        if (StateFromIndex(si) == s && ai == a) continue;
        CHECK(q.at(StateFromIndex(si), ai) == before.at(StateFromIndex(si), ai));
      }
    }
  }
}

TEST_CASE("values stay bounded by r_max / (1 - gamma)") {
  Rng rng(11);
  LearnerParams params;
  params.alpha = 0.2;
  params.gamma = 0.9;
  const double r_max = 5.0;
  const double bound = r_max / (1.0 - params.gamma) + 1e-9;
  QTable q;
  for (int i = 0; i < 200000; ++i) {
    const ObservedState s = StateFromIndex(NextTwoBits(rng));
    const Action a = static_cast<Action>(NextBit(rng));
    const ObservedState s_next = StateFromIndex(NextTwoBits(rng));
    const double r = (NextUnit(rng) * 2 - 1) * r_max;
    QUpdate(q, s, a, r, s_next, params);
  }
  for (int s = 0; s < kNumStates; ++s) {
    for (Action a : kAllActions) {
      CHECK(std::abs(q.at(StateFromIndex(s), a)) <= bound);
    }
  }
}

TEST_CASE("argmax is invariant under positive affine maps") {
  // Values on a coarse grid so the affine map stays exact in binary floating
  // point and the tie structure is preserved bit-for-bit.
  Rng rng(13);
  for (int i = 0; i < 2000; ++i) {
    QTable q;
    for (int s = 0; s < kNumStates; ++s) {
      for (Action a : kAllActions) {
        q.at(StateFromIndex(s), a) =
            static_cast<double>(static_cast<int>(rng() % 17) - 8) * 0.25;
      }
    }
    const double c = static_cast<double>(1 + rng() % 8);
    const double d = static_cast<double>(static_cast<int>(rng() % 9) - 4) * 0.5;
    QTable scaled;
    for (int s = 0; s < kNumStates; ++s) {
      for (Action a : kAllActions) {
        scaled.at(StateFromIndex(s), a) = c * q.at(StateFromIndex(s), a) + d;
      }
    }
    const GreedyPolicy lhs = ComputeGreedyPolicy(q);
    const GreedyPolicy rhs = ComputeGreedyPolicy(scaled);
    for (int s = 0; s < kNumStates; ++s) {
      CHECK(lhs[s].tied == rhs[s].tied);
      CHECK(lhs[s].action == rhs[s].action);
    }
  }
}

TEST_CASE("greedy policy surfaces ties") {
  QTable q;
  for (const auto& entry : ComputeGreedyPolicy(q)) {
    CHECK(entry.tied);
  }
  q.at(kCC, C) = 5;
  q.at(kCC, D) = 4;
  const GreedyPolicy policy = ComputeGreedyPolicy(q);
  CHECK_FALSE(policy[StateIndex(kCC)].tied);
  CHECK(policy[StateIndex(kCC)].action == C);
}

TEST_CASE("qtable snapshot keys every state") {
  QTable q;
  q.at(kDC, D) = 1.5;
  const std::string snapshot = QTableToJson(q);
  CHECK(snapshot.find("\"C,C\"") != std::string::npos);
  CHECK(snapshot.find("\"C,D\"") != std::string::npos);
  CHECK(snapshot.find("\"D,C\"") != std::string::npos);
  CHECK(snapshot.find("\"D,D\"") != std::string::npos);
  CHECK(snapshot.find("1.5") != std::string::npos);
  CHECK(StateKey(kCD) == "C,D");
}

TEST_CASE("learner parameter validation") {
  LearnerParams params;
  params.alpha = -1.0;
  CHECK_THROWS_AS(params.Validate(), std::invalid_argument);
  params.alpha = 0.01;
  params.gamma = 1.0;
  CHECK_THROWS_AS(params.Validate(), std::invalid_argument);
  params.gamma = 0.9;
  CHECK_NOTHROW(params.Validate());
}

}  // namespace
}  // namespace moralsim
