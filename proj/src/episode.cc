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

#include "moralsim/episode.h"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "moralsim/rng.h"

namespace moralsim {
namespace {

// Per-player mutable state inside one episode.
struct Player {
  const AgentSpec& spec;
  Rng rng;
  ObservedState state;
  QTable qtable;  // untouched for statics
  std::array<long, kNumStates> visits{};

  Action Act(double eps) {
    if (spec.is_learner()) {
      return SelectAction(qtable, state, eps, rng);
    }
    return StaticAction(spec.strategy, state.opp_prev, rng);
  }
};

double LoggedIntrinsic(const AgentSpec& spec, const RewardContext& ctx) {
  if (spec.is_learner()) return IntrinsicReward(spec.params.framework, ctx);
  return static_cast<double>(ctx.r_self_extr);
}

}  // namespace

void AgentSpec::Validate() const {
  if (is_learner()) params.Validate();
}

std::string ToString(const AgentSpec& spec) {
  if (spec.is_learner()) return ToString(spec.params.framework);
  return std::string(ToString(spec.strategy));
}

AgentSpec AgentSpecFromString(std::string_view s) {
  for (StaticStrategy strategy :
       {StaticStrategy::kAlwaysCooperate, StaticStrategy::kAlwaysDefect,
        StaticStrategy::kTitForTat, StaticStrategy::kRandom}) {
    if (s == ToString(strategy)) return AgentSpec::Static(strategy);
  }
  return AgentSpec::Learner(MoralFrameworkFromString(s));
}

EpisodeResult RunEpisode(const AgentSpec& spec_m, const AgentSpec& spec_o,
                         GameKind game, long iterations, std::uint64_t seed,
                         const EpisodeOptions& options) {
  if (iterations < 2) {
    throw std::invalid_argument("episode needs at least 2 iterations");
  }
  if (options.step_stride < 0) {
    throw std::invalid_argument("step_stride must be >= 0");
  }
  spec_m.Validate();
  spec_o.Validate();

  Rng init_rng(DeriveSeed(seed, 0));
  const int init = NextTwoBits(init_rng);
  const Action m_prev = static_cast<Action>((init >> 1) & 1);
  const Action o_prev = static_cast<Action>(init & 1);

  Player m{spec_m, Rng(DeriveSeed(seed, 1)), {o_prev, m_prev}, {}};
  Player o{spec_o, Rng(DeriveSeed(seed, 2)), {m_prev, o_prev}, {}};

  EpisodeResult result;
  result.game = game;
  result.spec_m = spec_m;
  result.spec_o = spec_o;
  result.iterations = iterations;
  result.seed = seed;
  if (options.step_stride == 1) {
    result.steps.reserve(static_cast<size_t>(iterations));
  }

  const long tail_start =
      std::max<long>(0, iterations - EpisodeOptions::kTailSteps);
  JointAction last_pair{Action::kCooperate, Action::kCooperate};

  for (long t = 0; t < iterations; ++t) {
    const double eps_m = spec_m.is_learner()
                             ? EpsilonAt(spec_m.params.schedule, t, iterations)
                             : 0.0;
    const double eps_o = spec_o.is_learner()
                             ? EpsilonAt(spec_o.params.schedule, t, iterations)
                             : 0.0;

    const Action a_m = m.Act(eps_m);
    const Action a_o = o.Act(eps_o);
    const auto [r_m, r_o] = ExtrinsicRewards(game, {a_m, a_o});

    const RewardContext ctx_m{m.state.opp_prev, a_m, r_m, r_o};
    const RewardContext ctx_o{o.state.opp_prev, a_o, r_o, r_m};
    const double intr_m = LoggedIntrinsic(spec_m, ctx_m);
    const double intr_o = LoggedIntrinsic(spec_o, ctx_o);

    const ObservedState next_m{a_o, a_m};
    const ObservedState next_o{a_m, a_o};
    if (spec_m.is_learner()) {
      QUpdate(m.qtable, m.state, a_m, intr_m, next_m, spec_m.params);
      m.visits[StateIndex(m.state)] += 1;
    }
    if (spec_o.is_learner()) {
      QUpdate(o.qtable, o.state, a_o, intr_o, next_o, spec_o.params);
      o.visits[StateIndex(o.state)] += 1;
    }

    result.cumulative.collective += static_cast<double>(r_m + r_o);
    result.cumulative.gini += GiniPair(r_m, r_o);
    result.cumulative.min += static_cast<double>(std::min(r_m, r_o));
    result.cumulative.r_m_extr += static_cast<double>(r_m);
    result.cumulative.r_o_extr += static_cast<double>(r_o);
    result.cumulative.r_m_intr += intr_m;
    result.cumulative.r_o_intr += intr_o;

    const bool in_tail = t >= tail_start;
    const bool on_stride =
        options.step_stride > 0 && t % options.step_stride == 0;
    if (in_tail || on_stride) {
      result.steps.push_back({t, m.state, o.state, a_m, a_o, r_m, r_o, intr_m,
                              intr_o,
                              spec_m.is_learner() ? eps_m : eps_o});
    }

    m.state = next_m;
    o.state = next_o;
    last_pair = {a_m, a_o};
  }

  result.final_pair = last_pair;
  if (spec_m.is_learner()) {
    result.qtable_m = m.qtable;
    result.visits_m = m.visits;
  }
  if (spec_o.is_learner()) {
    result.qtable_o = o.qtable;
    result.visits_o = o.visits;
  }
  return result;
}

std::vector<EpisodeResult> RunMatchup(const AgentSpec& spec_m,
                                      const AgentSpec& spec_o, GameKind game,
                                      long iterations, int n_runs,
                                      std::uint64_t base_seed,
                                      const MatchupOptions& options) {
  if (n_runs < 1) throw std::invalid_argument("n_runs must be >= 1");
  if (options.workers < 1) throw std::invalid_argument("workers must be >= 1");

  std::vector<EpisodeResult> results(static_cast<size_t>(n_runs));
  auto run_one = [&](int i) {
    results[static_cast<size_t>(i)] =
        RunEpisode(spec_m, spec_o, game, iterations, DeriveSeed(base_seed, i),
                   options.episode);
  };

  const int workers = std::min(options.workers, n_runs);
  if (workers == 1) {
    for (int i = 0; i < n_runs; ++i) run_one(i);
    return results;
  }

  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n_runs; i = next.fetch_add(1)) {
        run_one(i);
      }
    });
  }
  for (auto& thread : pool) thread.join();
  return results;
}

}  // namespace moralsim
