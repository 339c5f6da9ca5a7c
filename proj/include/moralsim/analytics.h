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

#ifndef MORALSIM_ANALYTICS_H_
#define MORALSIM_ANALYTICS_H_

#include <array>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "moralsim/episode.h"

namespace moralsim {

// Joint-action classes from player M's perspective: CD means M was
// exploited, DC means M exploited the opponent.
enum class PairClass { kCC = 0, kCD = 1, kDC = 2, kDD = 3 };

inline constexpr std::array<PairClass, 4> kAllPairClasses = {
    PairClass::kCC, PairClass::kCD, PairClass::kDC, PairClass::kDD};

std::string_view ToString(PairClass c);

// Cumulative social-outcome metrics over a step log. Each throws
// std::invalid_argument on an empty log.
double CollectiveReturn(std::span<const StepRecord> steps);
double GiniReturn(std::span<const StepRecord> steps);
double MinReturn(std::span<const StepRecord> steps);

PairClass ClassifyPair(JointAction pair);
PairClass ClassifyFinalPair(const EpisodeResult& result);

// Mean and half-width of the normal-approximation 95% interval
// (1.96 * sd / sqrt(n), sample sd; 0 when n < 2).
struct MetricStats {
  double mean = 0.0;
  double ci95 = 0.0;
};

struct MatchupSummary {
  GameKind game;
  AgentSpec spec_m;
  AgentSpec spec_o;
  int n_runs = 0;
  // Final-pair percentages over runs, indexed by PairClass; sums to 100.
  std::array<double, 4> pct{};
  MetricStats collective;
  MetricStats gini;
  MetricStats min;
  MetricStats r_m_extr;
  MetricStats r_m_intr;
  MetricStats r_o_extr;
  MetricStats r_o_intr;
};

// Cross-run statistics over one matchup's episodes. Throws
// std::invalid_argument when the list is empty or mixes configurations
// (game, specs or iteration counts differ).
MatchupSummary SummarizeMatchup(std::span<const EpisodeResult> results);

// The last k (state, action) pairs of each player, oldest first. Requires
// k <= iterations and that the result retained the last k step records
// (always true for k <= EpisodeOptions::kTailSteps); throws
// std::invalid_argument otherwise.
struct TraceStep {
  long t;
  ObservedState state;
  Action action;
};
struct EndTrace {
  std::vector<TraceStep> m;
  std::vector<TraceStep> o;
};
EndTrace LastKTrace(const EpisodeResult& result, int k);

// Exact best response against a deterministic static opponent, computed by
// value iteration on the induced four-state MDP (sweep tolerance 1e-10,
// at most 1e6 sweeps). The opponent's move is a function of the learner's
// observed state, the successor state is (opponent action, own action), and
// the step reward is the framework's intrinsic reward. Action values within
// 1e-8 of each other are reported as tied.
//
// Throws std::invalid_argument for the Random opponent (its MDP is not
// deterministic) and for gamma outside [0,1).
GreedyPolicy OracleBestResponse(StaticStrategy opponent, GameKind game,
                                const MoralFramework& framework, double gamma);

}  // namespace moralsim

#endif  // MORALSIM_ANALYTICS_H_
