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

#include "moralsim/qlearner.h"

#include <algorithm>
#include <stdexcept>

namespace moralsim {

std::string StateKey(ObservedState s) {
  return std::string(ToString(s.opp_prev)) + "," +
         std::string(ToString(s.self_prev));
}

void ExplorationSchedule::Validate() const {
  if (kind == Kind::kConstant && !(eps >= 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("constant exploration rate must be in [0,1]");
  }
}

std::string ToString(const ExplorationSchedule& schedule) {
  if (schedule.kind == ExplorationSchedule::Kind::kLinearDecay) {
    return "linear";
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "constant:%g", schedule.eps);
  return buf;
}

ExplorationSchedule ScheduleFromString(std::string_view s) {
  if (s == "linear") return ExplorationSchedule::LinearDecay();
  constexpr std::string_view kPrefix = "constant:";
  if (s.substr(0, kPrefix.size()) == kPrefix) {
    const std::string value(s.substr(kPrefix.size()));
    size_t pos = 0;
    double eps = 0.0;
    try {
      eps = std::stod(value, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != value.size()) {
      throw std::invalid_argument("bad exploration rate: " + value);
    }
    auto schedule = ExplorationSchedule::Constant(eps);
    schedule.Validate();
    return schedule;
  }
  throw std::invalid_argument("unknown schedule: " + std::string(s));
}

void LearnerParams::Validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must be in (0,1]");
  }
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma must be in [0,1)");
  }
  schedule.Validate();
  framework.Validate();
}

double EpsilonAt(const ExplorationSchedule& schedule, long t, long total) {
  if (total < 2) throw std::domain_error("episode length must be >= 2");
  if (t < 0 || t >= total) {
    throw std::domain_error("step index outside episode");
  }
  if (schedule.kind == ExplorationSchedule::Kind::kConstant) {
    return schedule.eps;
  }
  return 1.0 - static_cast<double>(t) / static_cast<double>(total - 1);
}

Action SelectAction(const QTable& q, ObservedState s, double eps, Rng& rng) {
  if (NextChance(rng, eps)) {
    return static_cast<Action>(NextBit(rng));
  }
  const double qc = q.at(s, Action::kCooperate);
  const double qd = q.at(s, Action::kDefect);
  if (qc > qd) return Action::kCooperate;
  if (qd > qc) return Action::kDefect;
  return static_cast<Action>(NextBit(rng));
}

void QUpdate(QTable& q, ObservedState s, Action a, double r,
             ObservedState s_next, const LearnerParams& params) {
  const double next_value = std::max(q.at(s_next, Action::kCooperate),
                                     q.at(s_next, Action::kDefect));
  double& cell = q.at(s, a);
  cell += params.alpha * (r + params.gamma * next_value - cell);
}

GreedyPolicy ComputeGreedyPolicy(const QTable& q) {
  GreedyPolicy policy;
  for (int i = 0; i < kNumStates; ++i) {
    const ObservedState s = StateFromIndex(i);
    const double qc = q.at(s, Action::kCooperate);
    const double qd = q.at(s, Action::kDefect);
    policy[i].tied = qc == qd;
    policy[i].action = qd > qc ? Action::kDefect : Action::kCooperate;
  }
  return policy;
}

std::string QTableToJson(const QTable& q) {
  std::string out = "{";
  for (int i = 0; i < kNumStates; ++i) {
    const ObservedState s = StateFromIndex(i);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s\"%s\": [%.17g, %.17g]",
                  i == 0 ? "" : ", ", StateKey(s).c_str(),
                  q.at(s, Action::kCooperate), q.at(s, Action::kDefect));
    out += buf;
  }
  out += "}";
  return out;
}

}  // namespace moralsim
