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

#ifndef MORALSIM_QLEARNER_H_
#define MORALSIM_QLEARNER_H_

#include <array>
#include <string>
#include <string_view>

#include "moralsim/game.h"
#include "moralsim/moral_reward.h"
#include "moralsim/rng.h"

namespace moralsim {

// What a learner observes: the opponent's and its own action from the
// previous step. Four states total.
struct ObservedState {
  Action opp_prev;
  Action self_prev;

  friend bool operator==(const ObservedState&, const ObservedState&) = default;
};

inline constexpr int kNumStates = 4;

inline constexpr int StateIndex(ObservedState s) {
  return ActionIndex(s.opp_prev) * 2 + ActionIndex(s.self_prev);
}

inline constexpr ObservedState StateFromIndex(int i) {
  return {static_cast<Action>((i >> 1) & 1), static_cast<Action>(i & 1)};
}

// State key "opp_prev,self_prev", e.g. "C,D".
std::string StateKey(ObservedState s);

// 4 states x 2 actions of action values, zero-initialized.
class QTable {
 public:
  double at(ObservedState s, Action a) const {
    return values_[StateIndex(s) * 2 + ActionIndex(a)];
  }
  double& at(ObservedState s, Action a) {
    return values_[StateIndex(s) * 2 + ActionIndex(a)];
  }

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  std::array<double, kNumStates * 2> values_{};
};

// Either a linear ramp from 1 to 0 across the episode or a constant rate.
struct ExplorationSchedule {
  enum class Kind { kLinearDecay, kConstant };

  Kind kind = Kind::kLinearDecay;
  double eps = 0.0;  // kConstant only

  static ExplorationSchedule LinearDecay() { return {Kind::kLinearDecay}; }
  static ExplorationSchedule Constant(double eps) {
    return {Kind::kConstant, eps};
  }

  void Validate() const;  // throws std::invalid_argument for eps outside [0,1]

  friend bool operator==(const ExplorationSchedule&,
                         const ExplorationSchedule&) = default;
};

// Wire form "linear" or "constant:<eps>".
std::string ToString(const ExplorationSchedule& schedule);
ExplorationSchedule ScheduleFromString(std::string_view s);

struct LearnerParams {
  double alpha = 0.01;
  double gamma = 0.90;
  ExplorationSchedule schedule = ExplorationSchedule::LinearDecay();
  MoralFramework framework;

  void Validate() const;  // alpha in (0,1], gamma in [0,1)

  friend bool operator==(const LearnerParams&, const LearnerParams&) = default;
};

// Exploration rate at step t of a T-step episode. The linear ramp uses
// denominator T-1 so the rate is exactly 1 at t=0 and exactly 0 at t=T-1
// (the step whose actions are reported as the final pair).
// Throws std::domain_error unless T >= 2 and 0 <= t < T.
double EpsilonAt(const ExplorationSchedule& schedule, long t, long total);

// Epsilon-greedy draw: with probability eps a uniformly random action,
// otherwise the argmax with exact ties broken uniformly at random.
Action SelectAction(const QTable& q, ObservedState s, double eps, Rng& rng);

// One tabular update:
//   q[s][a] += alpha * (r + gamma * max_a' q[s_next][a'] - q[s][a])
// Exactly one entry changes.
void QUpdate(QTable& q, ObservedState s, Action a, double r,
             ObservedState s_next, const LearnerParams& params);

// Per-state argmax for analysis. Unlike SelectAction, exact ties are
// surfaced, not sampled; `action` then holds the first maximizer in
// Cooperate < Defect order.
struct GreedyEntry {
  Action action;
  bool tied;
};
using GreedyPolicy = std::array<GreedyEntry, kNumStates>;

GreedyPolicy ComputeGreedyPolicy(const QTable& q);

// Snapshot form: a JSON object keyed by state ("C,C" ... "D,D"), each state
// mapping to [q_cooperate, q_defect] with full double precision.
std::string QTableToJson(const QTable& q);

}  // namespace moralsim

#endif  // MORALSIM_QLEARNER_H_
