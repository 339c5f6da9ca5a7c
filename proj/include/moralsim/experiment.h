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

#ifndef MORALSIM_EXPERIMENT_H_
#define MORALSIM_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "moralsim/analytics.h"
#include "moralsim/episode.h"

namespace moralsim {

inline constexpr std::string_view kArtifactVersion = "0.1.0";
inline constexpr std::string_view kPrngId = "mt19937_64/splitmix64";

// Exact header of the summary CSV.
extern const char kSummaryCsvHeader[];

// Optional deviations from the base protocol. long_run replaces the
// iteration count, schedule_override replaces every learner's exploration
// schedule, and beta_sweep expands each pairing into one variant per beta
// value applied to any VirtueMixed spec in the pair.
struct PlanVariants {
  std::optional<long> long_run;
  std::vector<double> beta_sweep;
  std::optional<ExplorationSchedule> schedule_override;

  friend bool operator==(const PlanVariants&, const PlanVariants&) = default;
};

struct PlanOutputs {
  std::string summary_csv;  // empty = not written
  std::string steps_csv;    // empty = not written
  int steps_thinning = 10;  // step-log stride for the steps CSV
  std::string json;         // empty = not written

  friend bool operator==(const PlanOutputs&, const PlanOutputs&) = default;
};

struct ExperimentPlan {
  enum class Pairing { kAllUnorderedWithSelf, kExplicit };

  std::vector<GameKind> games;
  std::vector<AgentSpec> agents;
  Pairing pairing = Pairing::kAllUnorderedWithSelf;
  std::vector<std::pair<AgentSpec, AgentSpec>> explicit_pairs;
  long iterations = 10000;
  int n_runs = 100;
  std::uint64_t base_seed = 0;
  // Plan-wide learner settings, already baked into the agent specs; kept for
  // the plan echo in outputs.
  double alpha = 0.01;
  double gamma = 0.90;
  ExplorationSchedule schedule = ExplorationSchedule::LinearDecay();
  PlanVariants variants;
  PlanOutputs outputs;

  void Validate() const;  // throws std::invalid_argument naming the field

  // M/O ordered pairs in execution order: every unordered pair of `agents`
  // including self-pairs (role by list order), or the explicit list.
  std::vector<std::pair<AgentSpec, AgentSpec>> Pairings() const;
};

// Parses and validates a JSON plan. The schema is documented in the README.
// Parse failures raise std::runtime_error with a line/field diagnostic;
// out-of-range values raise std::invalid_argument.
ExperimentPlan LoadPlan(const std::string& path);
ExperimentPlan ParsePlan(std::string_view text, std::string_view origin);

struct PlanEntry {
  std::string variant;  // "base" or e.g. "beta=0.2"
  MatchupSummary summary;
};

struct Provenance {
  std::string version;
  std::string prng;
  std::string timestamp;  // ISO 8601 UTC; never part of the CSV
};

struct ResultBundle {
  ExperimentPlan plan;
  std::vector<PlanEntry> entries;
  Provenance provenance;
};

// Executes every (game, pairing, variant) matchup of the plan and writes the
// configured outputs. Matchup task i is seeded DeriveSeed(base_seed, i), so
// the bundle is identical for every worker count; files are written via
// temp-file-plus-rename and never left partial.
ResultBundle RunPlan(const ExperimentPlan& plan, int workers = 1);

// Summary CSV: the exact kSummaryCsvHeader line plus one row per entry.
// UTF-8, LF line endings, percentages with one decimal, other reals with six
// significant digits. Throws std::invalid_argument on an empty bundle and
// std::runtime_error on I/O failure (naming the path).
std::string SummaryCsvString(const ResultBundle& bundle);
void EmitSummaryCsv(const ResultBundle& bundle, const std::string& path);

// JSON mirror of the CSV fields plus the plan echo and provenance.
std::string ResultJsonString(const ResultBundle& bundle);
void EmitJson(const ResultBundle& bundle, const std::string& path);

// Entry point behind the moralsim binary; see README for the subcommands.
// Streams are injectable for tests.
int CliMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);
int CliMain(int argc, const char* const* argv);

}  // namespace moralsim

#endif  // MORALSIM_EXPERIMENT_H_
