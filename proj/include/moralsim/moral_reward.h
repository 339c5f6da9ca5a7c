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

#ifndef MORALSIM_MORAL_REWARD_H_
#define MORALSIM_MORAL_REWARD_H_

#include <string>
#include <string_view>

#include "moralsim/game.h"

namespace moralsim {

// The six reward definitions an agent can learn from. Selfish is the plain
// extrinsic payoff; the other five replace it with an intrinsic signal:
//
//   Utilitarian    own payoff + opponent payoff
//   Deontological  -xi for defecting against an opponent that cooperated on
//                  the previous step, 0 otherwise
//   VirtueEquality pairwise Gini score of the two payoffs, in [0, 1]
//   VirtueKindness xi for cooperating, 0 otherwise
//   VirtueMixed    beta * equality + (1 - beta) * xi_hat * [cooperated]
//
// xi defaults to 5 (a signal on the order of the largest payoff in any of
// the three games); xi_hat is the kindness reward normalized into [0, 1] and
// defaults to 1; beta in [0, 1] weights equality against kindness.
enum class FrameworkKind {
  kSelfish = 0,
  kUtilitarian,
  kDeontological,
  kVirtueEquality,
  kVirtueKindness,
  kVirtueMixed,
};

inline constexpr double kDefaultXi = 5.0;
inline constexpr double kDefaultBeta = 0.5;
inline constexpr double kDefaultXiHat = 1.0;

struct MoralFramework {
  FrameworkKind kind = FrameworkKind::kSelfish;
  double xi = kDefaultXi;        // Deontological, VirtueKindness
  double beta = kDefaultBeta;    // VirtueMixed
  double xi_hat = kDefaultXiHat;  // VirtueMixed

  static MoralFramework Selfish() { return {FrameworkKind::kSelfish}; }
  static MoralFramework Utilitarian() { return {FrameworkKind::kUtilitarian}; }
  static MoralFramework Deontological(double xi = kDefaultXi) {
    return {FrameworkKind::kDeontological, xi};
  }
  static MoralFramework VirtueEquality() {
    return {FrameworkKind::kVirtueEquality};
  }
  static MoralFramework VirtueKindness(double xi = kDefaultXi) {
    return {FrameworkKind::kVirtueKindness, xi};
  }
  static MoralFramework VirtueMixed(double beta = kDefaultBeta,
                                    double xi_hat = kDefaultXiHat) {
    return {FrameworkKind::kVirtueMixed, kDefaultXi, beta, xi_hat};
  }

  // Throws std::invalid_argument when a parameter is out of range
  // (beta or xi_hat outside [0,1], xi <= 0).
  void Validate() const;

  friend bool operator==(const MoralFramework&, const MoralFramework&) =
      default;
};

// Everything a framework may look at on one step, from the learner's own
// point of view. prev_opponent_action is the opponent component of the state
// the learner observed before acting (the fictitious initial action on the
// first step).
struct RewardContext {
  Action prev_opponent_action;
  Action own_action;
  int r_self_extr;
  int r_opp_extr;
};

// Two-player Gini score 1 - |r1 - r2| / (r1 + r2), in [0, 1] for positive
// inputs. Throws std::domain_error when r1 + r2 <= 0; the Table payoffs can
// never trigger that, the guard is for arbitrary callers.
double GiniPair(double r1, double r2);

// The framework's reward for one step. Propagates GiniPair's domain error.
double IntrinsicReward(const MoralFramework& framework,
                       const RewardContext& ctx);

// Wire names: "Selfish", "Utilitarian", "Deontological", "VirtueEquality",
// "VirtueKindness", "VirtueMixed".
std::string_view ToString(FrameworkKind kind);
FrameworkKind FrameworkKindFromString(std::string_view s);

// Canonical label, with non-default parameters spelled out, e.g.
// "VirtueMixed(beta=0.8)". Round-trips through MoralFrameworkFromString.
std::string ToString(const MoralFramework& framework);

// Parses "Name" or "Name(key=value,...)" with keys xi, beta, xi_hat.
// Throws std::invalid_argument on unknown names/keys or bad values.
MoralFramework MoralFrameworkFromString(std::string_view s);

}  // namespace moralsim

#endif  // MORALSIM_MORAL_REWARD_H_
