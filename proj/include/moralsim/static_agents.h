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

#ifndef MORALSIM_STATIC_AGENTS_H_
#define MORALSIM_STATIC_AGENTS_H_

#include <string_view>

#include "moralsim/game.h"
#include "moralsim/rng.h"

namespace moralsim {

// Classic non-learning tournament strategies. Tit for Tat answers the
// opponent's previous action, which on the first step is the fictitious
// initial action drawn by the episode engine.
enum class StaticStrategy {
  kAlwaysCooperate = 0,
  kAlwaysDefect,
  kTitForTat,
  kRandom,
};

Action StaticAction(StaticStrategy strategy, Action opp_prev, Rng& rng);

// Wire names "AC", "AD", "TFT", "Random".
std::string_view ToString(StaticStrategy strategy);
StaticStrategy StaticStrategyFromString(std::string_view s);

}  // namespace moralsim

#endif  // MORALSIM_STATIC_AGENTS_H_
