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

#ifndef MORALSIM_GAME_H_
#define MORALSIM_GAME_H_

#include <array>
#include <string>
#include <string_view>
#include <utility>

namespace moralsim {

// The two abstract actions of a 2x2 dilemma. Cooperate orders before Defect;
// serialization and table indexing rely on that.
enum class Action { kCooperate = 0, kDefect = 1 };

inline constexpr std::array<Action, 2> kAllActions = {Action::kCooperate,
                                                      Action::kDefect};

inline constexpr int ActionIndex(Action a) { return static_cast<int>(a); }

// The three iterated dilemmas: Prisoner's Dilemma, Volunteer's Dilemma
// (Chicken), and Stag Hunt.
enum class GameKind { kIPD = 0, kIVD = 1, kISH = 2 };

inline constexpr std::array<GameKind, 3> kAllGames = {
    GameKind::kIPD, GameKind::kIVD, GameKind::kISH};

// Simultaneous action pair, row player M first.
struct JointAction {
  Action m;
  Action o;

  friend bool operator==(const JointAction&, const JointAction&) = default;
};

// One cell of the bimatrix: integer points for the row and column player.
struct PayoffPair {
  int row;
  int col;

  friend bool operator==(const PayoffPair&, const PayoffPair&) = default;
};

// Symmetric 2x2 bimatrix. Payoffs are kept as exact integers; reward and
// metric arithmetic converts to double at the point of use. Entries are
// strictly positive in all three games (the pairwise Gini denominator
// depends on that).
struct PayoffMatrix {
  // cells[row_action][col_action]
  std::array<std::array<PayoffPair, 2>, 2> cells;

  const PayoffPair& at(Action row, Action col) const {
    return cells[ActionIndex(row)][ActionIndex(col)];
  }
};

// The per-step payoff matrix of a game. Total over GameKind.
const PayoffMatrix& PayoffMatrixFor(GameKind game);

// Extrinsic points for both players. The first component is the row (M)
// player's payoff under joint.m, the second the column (O) player's.
std::pair<int, int> ExtrinsicRewards(GameKind game, JointAction joint);

// Wire names: actions "C"/"D", games "IPD"/"IVD"/"ISH".
std::string_view ToString(Action a);
std::string_view ToString(GameKind game);
Action ActionFromString(std::string_view s);    // throws std::invalid_argument
GameKind GameKindFromString(std::string_view s);  // throws std::invalid_argument

}  // namespace moralsim

#endif  // MORALSIM_GAME_H_
