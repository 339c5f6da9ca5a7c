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

#ifndef MORALSIM_EPISODE_H_
#define MORALSIM_EPISODE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "moralsim/game.h"
#include "moralsim/moral_reward.h"
#include "moralsim/qlearner.h"
#include "moralsim/static_agents.h"

namespace moralsim {

// One side of a matchup: a Q-learner with its parameters, or a static
// tournament strategy.
struct AgentSpec {
  enum class Kind { kLearner, kStatic };

  Kind kind = Kind::kLearner;
  LearnerParams params;                    // kLearner
  StaticStrategy strategy = StaticStrategy::kAlwaysCooperate;  // kStatic

  static AgentSpec Learner(LearnerParams params) {
    AgentSpec spec;
    spec.kind = Kind::kLearner;
    spec.params = std::move(params);
    return spec;
  }
  static AgentSpec Learner(MoralFramework framework) {
    LearnerParams params;
    params.framework = framework;
    return Learner(params);
  }
  static AgentSpec Static(StaticStrategy strategy) {
    AgentSpec spec;
    spec.kind = Kind::kStatic;
    spec.strategy = strategy;
    return spec;
  }

  bool is_learner() const { return kind == Kind::kLearner; }

  void Validate() const;

  friend bool operator==(const AgentSpec&, const AgentSpec&) = default;
};

// Label used in CSV/JSON output and accepted back by AgentSpecFromString:
// the framework label for learners ("Selfish", "VirtueMixed(beta=0.8)", ...)
// or the strategy name for statics ("AC", "AD", "TFT", "Random"). Learner
// alpha/gamma/schedule are not part of the label; they live in the plan.
std::string ToString(const AgentSpec& spec);
AgentSpec AgentSpecFromString(std::string_view s);

// Everything observed on one step. States are as seen before acting; the
// extrinsic rewards match the payoff matrix at (a_m, a_o). For a static
// agent, which has no reward of its own, the logged intrinsic reward is its
// extrinsic payoff. eps is the exploration rate used by player M when M
// learns, otherwise by player O when O learns, otherwise 0.
struct StepRecord {
  long t;
  ObservedState state_m;
  ObservedState state_o;
  Action a_m;
  Action a_o;
  int r_m_extr;
  int r_o_extr;
  double r_m_intr;
  double r_o_intr;
  double eps;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

// Sums over all T steps, accumulated online so they are exact regardless of
// how many step records were retained.
struct CumulativeReturns {
  double collective = 0.0;  // sum of both extrinsic payoffs
  double gini = 0.0;        // sum of per-step pairwise Gini scores
  double min = 0.0;         // sum of per-step minimum payoffs
  double r_m_extr = 0.0;
  double r_o_extr = 0.0;
  double r_m_intr = 0.0;
  double r_o_intr = 0.0;

  friend bool operator==(const CumulativeReturns&, const CumulativeReturns&) =
      default;
};

struct EpisodeResult {
  GameKind game;
  AgentSpec spec_m;
  AgentSpec spec_o;
  long iterations = 0;
  std::uint64_t seed = 0;
  std::vector<StepRecord> steps;  // possibly thinned, see EpisodeOptions
  JointAction final_pair;         // actions at t = T-1
  CumulativeReturns cumulative;
  std::optional<QTable> qtable_m;  // present iff the agent learns
  std::optional<QTable> qtable_o;
  // Per-state update counts, for judging which parts of a table were
  // actually trained. Present iff the agent learns.
  std::optional<std::array<long, kNumStates>> visits_m;
  std::optional<std::array<long, kNumStates>> visits_o;

  friend bool operator==(const EpisodeResult&, const EpisodeResult&) = default;
};

struct EpisodeOptions {
  // Which step records to retain: 1 keeps every step, k > 1 keeps every k-th
  // step, 0 keeps none. The final kTailSteps steps are always retained so
  // end-of-training traces stay available at any thinning level. Cumulative
  // returns and the final pair never depend on this.
  int step_stride = 1;

  static constexpr int kTailSteps = 20;
};

// Runs one seeded episode of `iterations` simultaneous-move steps.
//
// The per-run PRNG layout is fixed: SplitMix64 substream 0 of `seed` draws
// the fictitious initial joint action (uniform over the four pairs; both
// players observe it from their own perspective), substream 1 drives player
// M's draws and substream 2 player O's. Each step both players pick actions
// without seeing the other's current choice, payoffs are read from the
// matrix, intrinsic rewards are evaluated per framework, and each learner
// updates its own table with its own reward and successor state (opponent
// action first, own action second). Identical inputs give bit-identical
// results.
//
// Throws std::invalid_argument for iterations < 2 or invalid specs.
EpisodeResult RunEpisode(const AgentSpec& spec_m, const AgentSpec& spec_o,
                         GameKind game, long iterations, std::uint64_t seed,
                         const EpisodeOptions& options = {});

struct MatchupOptions {
  EpisodeOptions episode;
  // Number of worker threads. Runs are independently seeded, so any worker
  // count yields the same result list in run order.
  int workers = 1;
};

// Runs n_runs episodes, run i seeded with DeriveSeed(base_seed, i).
// Throws std::invalid_argument for n_runs < 1 or workers < 1.
std::vector<EpisodeResult> RunMatchup(const AgentSpec& spec_m,
                                      const AgentSpec& spec_o, GameKind game,
                                      long iterations, int n_runs,
                                      std::uint64_t base_seed,
                                      const MatchupOptions& options = {});

}  // namespace moralsim

#endif  // MORALSIM_EPISODE_H_
