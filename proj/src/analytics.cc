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

#include "moralsim/analytics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace moralsim {
namespace {

void RequireNonEmpty(std::span<const StepRecord> steps) {
  if (steps.empty()) throw std::invalid_argument("empty step log");
}

MetricStats StatsOver(std::span<const EpisodeResult> results,
                      double (*pick)(const CumulativeReturns&)) {
  const auto n = results.size();
  double sum = 0.0;
  for (const auto& r : results) sum += pick(r.cumulative);
  const double mean = sum / static_cast<double>(n);
  if (n < 2) return {mean, 0.0};
  double ss = 0.0;
  for (const auto& r : results) {
    const double d = pick(r.cumulative) - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return {mean, 1.96 * sd / std::sqrt(static_cast<double>(n))};
}

}  // namespace

std::string_view ToString(PairClass c) {
  switch (c) {
    case PairClass::kCC:
      return "CC";
    case PairClass::kCD:
      return "CD";
    case PairClass::kDC:
      return "DC";
    case PairClass::kDD:
      return "DD";
  }
  return "?";
}

double CollectiveReturn(std::span<const StepRecord> steps) {
  RequireNonEmpty(steps);
  double sum = 0.0;
  for (const auto& s : steps) sum += static_cast<double>(s.r_m_extr + s.r_o_extr);
  return sum;
}

double GiniReturn(std::span<const StepRecord> steps) {
  RequireNonEmpty(steps);
  double sum = 0.0;
  for (const auto& s : steps) sum += GiniPair(s.r_m_extr, s.r_o_extr);
  return sum;
}

double MinReturn(std::span<const StepRecord> steps) {
  RequireNonEmpty(steps);
  double sum = 0.0;
  for (const auto& s : steps) {
    sum += static_cast<double>(std::min(s.r_m_extr, s.r_o_extr));
  }
  return sum;
}

PairClass ClassifyPair(JointAction pair) {
  const int index = ActionIndex(pair.m) * 2 + ActionIndex(pair.o);
  return static_cast<PairClass>(index);
}

PairClass ClassifyFinalPair(const EpisodeResult& result) {
  return ClassifyPair(result.final_pair);
}

MatchupSummary SummarizeMatchup(std::span<const EpisodeResult> results) {
  if (results.empty()) {
    throw std::invalid_argument("cannot summarize an empty matchup");
  }
  const EpisodeResult& first = results.front();
  for (const auto& r : results) {
    if (r.game != first.game || r.spec_m != first.spec_m ||
        r.spec_o != first.spec_o || r.iterations != first.iterations) {
      throw std::invalid_argument("matchup results mix configurations");
    }
  }

  MatchupSummary summary;
  summary.game = first.game;
  summary.spec_m = first.spec_m;
  summary.spec_o = first.spec_o;
  summary.n_runs = static_cast<int>(results.size());

  std::array<long, 4> counts{};
  for (const auto& r : results) {
    counts[static_cast<int>(ClassifyFinalPair(r))] += 1;
  }
  for (int c = 0; c < 4; ++c) {
    summary.pct[c] =
        100.0 * static_cast<double>(counts[c]) / static_cast<double>(results.size());
  }

  summary.collective =
      StatsOver(results, [](const CumulativeReturns& c) { return c.collective; });
  summary.gini =
      StatsOver(results, [](const CumulativeReturns& c) { return c.gini; });
  summary.min =
      StatsOver(results, [](const CumulativeReturns& c) { return c.min; });
  summary.r_m_extr =
      StatsOver(results, [](const CumulativeReturns& c) { return c.r_m_extr; });
  summary.r_m_intr =
      StatsOver(results, [](const CumulativeReturns& c) { return c.r_m_intr; });
  summary.r_o_extr =
      StatsOver(results, [](const CumulativeReturns& c) { return c.r_o_extr; });
  summary.r_o_intr =
      StatsOver(results, [](const CumulativeReturns& c) { return c.r_o_intr; });
  return summary;
}

EndTrace LastKTrace(const EpisodeResult& result, int k) {
  if (k < 0 || k > result.iterations) {
    throw std::invalid_argument("trace length exceeds episode length");
  }
  EndTrace trace;
  if (k == 0) return trace;
  if (result.steps.size() < static_cast<size_t>(k)) {
    throw std::invalid_argument("step log does not retain the last k steps");
  }
  const auto tail = std::span(result.steps).last(static_cast<size_t>(k));
  long expected = result.iterations - k;
  for (const auto& s : tail) {
    if (s.t != expected) {
      throw std::invalid_argument("step log does not retain the last k steps");
    }
    ++expected;
    trace.m.push_back({s.t, s.state_m, s.a_m});
    trace.o.push_back({s.t, s.state_o, s.a_o});
  }
  return trace;
}

GreedyPolicy OracleBestResponse(StaticStrategy opponent, GameKind game,
                                const MoralFramework& framework,
                                double gamma) {
  if (opponent == StaticStrategy::kRandom) {
    throw std::invalid_argument(
        "oracle requires a deterministic opponent; Random is not supported");
  }
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma must be in [0,1)");
  }
  framework.Validate();

  // Opponent move as a function of the learner's observed state. TFT echoes
  // the learner's previous action, which is the self component of the state.
  const auto opponent_move = [&](ObservedState s) {
    switch (opponent) {
      case StaticStrategy::kAlwaysCooperate:
        return Action::kCooperate;
      case StaticStrategy::kAlwaysDefect:
        return Action::kDefect;
      default:
        return s.self_prev;
    }
  };

  // Precompute reward and successor for each (state, action).
  std::array<std::array<double, 2>, kNumStates> reward{};
  std::array<std::array<int, 2>, kNumStates> successor{};
  for (int i = 0; i < kNumStates; ++i) {
    const ObservedState s = StateFromIndex(i);
    const Action opp = opponent_move(s);
    for (Action a : kAllActions) {
      const auto [r_self, r_opp] = ExtrinsicRewards(game, {a, opp});
      reward[i][ActionIndex(a)] =
          IntrinsicReward(framework, {s.opp_prev, a, r_self, r_opp});
      successor[i][ActionIndex(a)] = StateIndex({opp, a});
    }
  }

  constexpr double kSweepTol = 1e-10;
  constexpr long kMaxSweeps = 1'000'000;
  std::array<double, kNumStates> value{};
  for (long sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double delta = 0.0;
    for (int i = 0; i < kNumStates; ++i) {
      const double vc = reward[i][0] + gamma * value[successor[i][0]];
      const double vd = reward[i][1] + gamma * value[successor[i][1]];
      const double v = std::max(vc, vd);
      delta = std::max(delta, std::abs(v - value[i]));
      value[i] = v;
    }
    if (delta < kSweepTol) break;
  }

  constexpr double kTieTol = 1e-8;
  GreedyPolicy policy;
  for (int i = 0; i < kNumStates; ++i) {
    const double vc = reward[i][0] + gamma * value[successor[i][0]];
    const double vd = reward[i][1] + gamma * value[successor[i][1]];
    policy[i].tied = std::abs(vc - vd) <= kTieTol;
    policy[i].action =
        vd > vc + kTieTol ? Action::kDefect : Action::kCooperate;
  }
  return policy;
}

}  // namespace moralsim
