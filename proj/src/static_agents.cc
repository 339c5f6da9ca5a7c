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
#include <string>

namespace moralsim {

Action StaticAction(StaticStrategy strategy, Action opp_prev, Rng& rng) {
  switch (strategy) {
    case StaticStrategy::kAlwaysCooperate:
      return Action::kCooperate;
    case StaticStrategy::kAlwaysDefect:
      return Action::kDefect;
    case StaticStrategy::kTitForTat:
      return opp_prev;
    case StaticStrategy::kRandom:
      return static_cast<Action>(NextBit(rng));
  }
  throw std::invalid_argument("unknown StaticStrategy");
}

std::string_view ToString(StaticStrategy strategy) {
  switch (strategy) {
    case StaticStrategy::kAlwaysCooperate:
      return "AC";
    case StaticStrategy::kAlwaysDefect:
      return "AD";
    case StaticStrategy::kTitForTat:
      return "TFT";
    case StaticStrategy::kRandom:
      return "Random";
  }
  return "?";
}

StaticStrategy StaticStrategyFromString(std::string_view s) {
  for (StaticStrategy strategy :
       {StaticStrategy::kAlwaysCooperate, StaticStrategy::kAlwaysDefect,
        StaticStrategy::kTitForTat, StaticStrategy::kRandom}) {
    if (s == ToString(strategy)) return strategy;
  }
  throw std::invalid_argument("unknown static strategy: " + std::string(s));
}

}  // namespace moralsim
