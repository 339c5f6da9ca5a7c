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

#include "moralsim/game.h"

#include <stdexcept>

namespace moralsim {
namespace {

constexpr PayoffMatrix MakeMatrix(PayoffPair cc, PayoffPair cd, PayoffPair dc,
                                  PayoffPair dd) {
  return PayoffMatrix{{{{{cc, cd}}, {{dc, dd}}}}};
}

// Row player vs column player, per step.
//   IPD: greed and fear both push towards defection.
//   IVD: greed only (DD is the worst outcome for everyone).
//   ISH: fear only (CC is the best outcome for everyone).
constexpr PayoffMatrix kIpd = MakeMatrix({3, 3}, {1, 4}, {4, 1}, {2, 2});
constexpr PayoffMatrix kIvd = MakeMatrix({4, 4}, {2, 5}, {5, 2}, {1, 1});
constexpr PayoffMatrix kIsh = MakeMatrix({5, 5}, {1, 4}, {4, 1}, {2, 2});

}  // namespace

const PayoffMatrix& PayoffMatrixFor(GameKind game) {
  switch (game) {
    case GameKind::kIPD:
      return kIpd;
    case GameKind::kIVD:
      return kIvd;
    case GameKind::kISH:
      return kIsh;
  }
  throw std::invalid_argument("unknown GameKind");
}

std::pair<int, int> ExtrinsicRewards(GameKind game, JointAction joint) {
  const PayoffPair& cell = PayoffMatrixFor(game).at(joint.m, joint.o);
  return {cell.row, cell.col};
}

std::string_view ToString(Action a) {
  return a == Action::kCooperate ? "C" : "D";
}

std::string_view ToString(GameKind game) {
  switch (game) {
    case GameKind::kIPD:
      return "IPD";
    case GameKind::kIVD:
      return "IVD";
    case GameKind::kISH:
      return "ISH";
  }
  return "?";
}

Action ActionFromString(std::string_view s) {
  if (s == "C") return Action::kCooperate;
  if (s == "D") return Action::kDefect;
  throw std::invalid_argument("unknown action name: " + std::string(s));
}

GameKind GameKindFromString(std::string_view s) {
  if (s == "IPD") return GameKind::kIPD;
  if (s == "IVD") return GameKind::kIVD;
  if (s == "ISH") return GameKind::kISH;
  throw std::invalid_argument("unknown game name: " + std::string(s));
}

}  // namespace moralsim
