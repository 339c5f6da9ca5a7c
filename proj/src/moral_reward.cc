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

#include "moralsim/moral_reward.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace moralsim {
namespace {

std::string FormatParam(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

double ParseParamValue(std::string_view s) {
  try {
    size_t pos = 0;
    double v = std::stod(std::string(s), &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad framework parameter value: " +
                                std::string(s));
  }
}

}  // namespace

void MoralFramework::Validate() const {
  if (!(xi > 0)) {
    throw std::invalid_argument("framework parameter xi must be > 0");
  }
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw std::invalid_argument("framework parameter beta must be in [0,1]");
  }
  if (!(xi_hat >= 0.0 && xi_hat <= 1.0)) {
    throw std::invalid_argument("framework parameter xi_hat must be in [0,1]");
  }
}

double GiniPair(double r1, double r2) {
  const double sum = r1 + r2;
  if (!(sum > 0)) {
    throw std::domain_error("GiniPair: r1 + r2 must be positive");
  }
  return 1.0 - std::abs(r1 - r2) / sum;
}

double IntrinsicReward(const MoralFramework& framework,
                       const RewardContext& ctx) {
  const bool cooperated = ctx.own_action == Action::kCooperate;
  switch (framework.kind) {
    case FrameworkKind::kSelfish:
      return static_cast<double>(ctx.r_self_extr);
    case FrameworkKind::kUtilitarian:
      return static_cast<double>(ctx.r_self_extr + ctx.r_opp_extr);
    case FrameworkKind::kDeontological:
      return (!cooperated && ctx.prev_opponent_action == Action::kCooperate)
                 ? -framework.xi
                 : 0.0;
    case FrameworkKind::kVirtueEquality:
      return GiniPair(ctx.r_self_extr, ctx.r_opp_extr);
    case FrameworkKind::kVirtueKindness:
      return cooperated ? framework.xi : 0.0;
    case FrameworkKind::kVirtueMixed: {
      const double equality = GiniPair(ctx.r_self_extr, ctx.r_opp_extr);
      double r = framework.beta * equality;
      if (cooperated) r += (1.0 - framework.beta) * framework.xi_hat;
      return r;
    }
  }
  throw std::invalid_argument("unknown FrameworkKind");
}

std::string_view ToString(FrameworkKind kind) {
  switch (kind) {
    case FrameworkKind::kSelfish:
      return "Selfish";
    case FrameworkKind::kUtilitarian:
      return "Utilitarian";
    case FrameworkKind::kDeontological:
      return "Deontological";
    case FrameworkKind::kVirtueEquality:
      return "VirtueEquality";
    case FrameworkKind::kVirtueKindness:
      return "VirtueKindness";
    case FrameworkKind::kVirtueMixed:
      return "VirtueMixed";
  }
  return "?";
}

FrameworkKind FrameworkKindFromString(std::string_view s) {
  for (FrameworkKind kind :
       {FrameworkKind::kSelfish, FrameworkKind::kUtilitarian,
        FrameworkKind::kDeontological, FrameworkKind::kVirtueEquality,
        FrameworkKind::kVirtueKindness, FrameworkKind::kVirtueMixed}) {
    if (s == ToString(kind)) return kind;
  }
  throw std::invalid_argument("unknown framework name: " + std::string(s));
}

std::string ToString(const MoralFramework& framework) {
  std::string out{ToString(framework.kind)};
  std::string params;
  auto append = [&params](std::string_view key, double v) {
    if (!params.empty()) params += ",";
    params += std::string(key) + "=" + FormatParam(v);
  };
  switch (framework.kind) {
    case FrameworkKind::kDeontological:
    case FrameworkKind::kVirtueKindness:
      if (framework.xi != kDefaultXi) append("xi", framework.xi);
      break;
    case FrameworkKind::kVirtueMixed:
      if (framework.beta != kDefaultBeta) append("beta", framework.beta);
      if (framework.xi_hat != kDefaultXiHat) append("xi_hat", framework.xi_hat);
      break;
    default:
      break;
  }
  if (!params.empty()) out += "(" + params + ")";
  return out;
}

MoralFramework MoralFrameworkFromString(std::string_view s) {
  std::string_view name = s;
  std::string_view params;
  if (auto open = s.find('('); open != std::string_view::npos) {
    if (s.back() != ')') {
      throw std::invalid_argument("unbalanced framework parameters: " +
                                  std::string(s));
    }
    name = s.substr(0, open);
    params = s.substr(open + 1, s.size() - open - 2);
  }
  MoralFramework framework;
  framework.kind = FrameworkKindFromString(name);
  while (!params.empty()) {
    const auto comma = params.find(',');
    std::string_view item = params.substr(0, comma);
    params = comma == std::string_view::npos ? std::string_view{}
                                             : params.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("framework parameter needs key=value: " +
                                  std::string(item));
    }
    const std::string_view key = item.substr(0, eq);
    const double value = ParseParamValue(item.substr(eq + 1));
    if (key == "xi") {
      framework.xi = value;
    } else if (key == "beta") {
      framework.beta = value;
    } else if (key == "xi_hat") {
      framework.xi_hat = value;
    } else {
      throw std::invalid_argument("unknown framework parameter: " +
                                  std::string(key));
    }
  }
  framework.Validate();
  return framework;
}

}  // namespace moralsim
