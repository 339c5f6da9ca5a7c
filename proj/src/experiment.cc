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

#include "moralsim/experiment.h"

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace moralsim {
namespace fs = std::filesystem;
using nlohmann::json;

const char kSummaryCsvHeader[] =
    "game,agent_m,agent_o,variant,n_runs,pct_cc,pct_cd,pct_dc,pct_dd,"
    "mean_collective,ci_collective,mean_gini,ci_gini,mean_min,ci_min,"
    "mean_rm_extr,ci_rm_extr,mean_rm_intr,ci_rm_intr,"
    "mean_ro_extr,ci_ro_extr,mean_ro_intr,ci_ro_intr";

namespace {

std::string FormatReal(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string FormatPct(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

// Atomic file sink: writes go to a temp name in the target directory and
// only a successful Commit() renames it into place, so readers never see a
// partial file. An abandoned sink cleans its temp file up.
class AtomicFileWriter {
 public:
  explicit AtomicFileWriter(std::string path)
      : target_(std::move(path)), tmp_(target_.string() + ".tmp") {
    std::error_code ec;
    if (target_.has_parent_path()) {
      fs::create_directories(target_.parent_path(), ec);
      if (ec) {
        throw std::runtime_error("cannot create directory " +
                                 target_.parent_path().string() + ": " +
                                 ec.message());
      }
    }
    out_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!out_) {
      throw std::runtime_error("cannot open " + tmp_.string() +
                               " for writing");
    }
  }

  ~AtomicFileWriter() {
    if (!committed_) {
      out_.close();
      std::error_code ec;
      fs::remove(tmp_, ec);
    }
  }

  std::ostream& stream() { return out_; }

  void Commit() {
    out_.flush();
    if (!out_) {
      throw std::runtime_error("write failed for " + tmp_.string());
    }
    out_.close();
    std::error_code ec;
    fs::rename(tmp_, target_, ec);
    if (ec) {
      fs::remove(tmp_, ec);
      throw std::runtime_error("cannot move " + tmp_.string() + " to " +
                               target_.string() + ": " + ec.message());
    }
    committed_ = true;
  }

 private:
  fs::path target_;
  fs::path tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

void WriteFileAtomic(const std::string& path, const std::string& content) {
  AtomicFileWriter writer(path);
  writer.stream() << content;
  writer.Commit();
}

std::string NowUtcIso8601() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

long LineOfByteOffset(std::string_view text, size_t byte) {
  long line = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

void RejectUnknownKeys(const json& obj, std::string_view section,
                       std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : obj.items()) {
    bool found = false;
    for (auto k : known) {
      if (key == k) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::invalid_argument("unknown config field \"" + key + "\" in " +
                                  std::string(section));
    }
  }
}

AgentSpec BuildAgent(std::string_view label, const ExperimentPlan& plan) {
  AgentSpec spec = AgentSpecFromString(label);
  if (spec.is_learner()) {
    spec.params.alpha = plan.alpha;
    spec.params.gamma = plan.gamma;
    spec.params.schedule = plan.schedule;
  }
  return spec;
}

AgentSpec WithBeta(AgentSpec spec, double beta) {
  if (spec.is_learner() &&
      spec.params.framework.kind == FrameworkKind::kVirtueMixed) {
    spec.params.framework.beta = beta;
  }
  return spec;
}

AgentSpec WithSchedule(AgentSpec spec, const ExplorationSchedule& schedule) {
  if (spec.is_learner()) spec.params.schedule = schedule;
  return spec;
}

std::string VariantLabel(double beta) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "beta=%g", beta);
  return buf;
}

void AppendSummaryRow(std::string& out, const PlanEntry& entry) {
  const MatchupSummary& s = entry.summary;
  out += std::string(ToString(s.game)) + ',' + ToString(s.spec_m) + ',' +
         ToString(s.spec_o) + ',' + entry.variant + ',' +
         std::to_string(s.n_runs);
  for (const double pct : s.pct) out += ',' + FormatPct(pct);
  for (const MetricStats* stats :
       {&s.collective, &s.gini, &s.min, &s.r_m_extr, &s.r_m_intr, &s.r_o_extr,
        &s.r_o_intr}) {
    out += ',' + FormatReal(stats->mean) + ',' + FormatReal(stats->ci95);
  }
  out += '\n';
}

json PlanToJson(const ExperimentPlan& plan) {
  json j;
  j["games"] = json::array();
  for (GameKind game : plan.games) j["games"].push_back(ToString(game));
  j["agents"] = json::array();
  for (const auto& agent : plan.agents) j["agents"].push_back(ToString(agent));
  j["pairing"] = plan.pairing == ExperimentPlan::Pairing::kExplicit
                     ? "explicit"
                     : "all_unordered_pairs_with_self";
  if (plan.pairing == ExperimentPlan::Pairing::kExplicit) {
    j["pairs"] = json::array();
    for (const auto& [m, o] : plan.explicit_pairs) {
      j["pairs"].push_back({ToString(m), ToString(o)});
    }
  }
  j["iterations"] = plan.iterations;
  j["runs"] = plan.n_runs;
  j["base_seed"] = plan.base_seed;
  j["alpha"] = plan.alpha;
  j["gamma"] = plan.gamma;
  j["schedule"] = ToString(plan.schedule);
  json variants = json::object();
  if (plan.variants.long_run) variants["long_run"] = *plan.variants.long_run;
  if (!plan.variants.beta_sweep.empty()) {
    variants["beta_sweep"] = plan.variants.beta_sweep;
  }
  if (plan.variants.schedule_override) {
    variants["schedule_override"] = ToString(*plan.variants.schedule_override);
  }
  if (!variants.empty()) j["variants"] = variants;
  json outputs = json::object();
  if (!plan.outputs.summary_csv.empty()) {
    outputs["summary_csv"] = plan.outputs.summary_csv;
  }
  if (!plan.outputs.steps_csv.empty()) {
    outputs["steps_csv"] = plan.outputs.steps_csv;
    outputs["steps_thinning"] = plan.outputs.steps_thinning;
  }
  if (!plan.outputs.json.empty()) outputs["json"] = plan.outputs.json;
  if (!outputs.empty()) j["outputs"] = outputs;
  return j;
}

void AppendStepsCsv(std::ostream& out, const PlanEntry& entry,
                    const std::vector<EpisodeResult>& results) {
  const std::string prefix = std::string(ToString(entry.summary.game)) + ',' +
                             ToString(entry.summary.spec_m) + ',' +
                             ToString(entry.summary.spec_o) + ',' +
                             entry.variant + ',';
  for (size_t run = 0; run < results.size(); ++run) {
    for (const StepRecord& s : results[run].steps) {
      out << prefix << run << ',' << s.t << ','
          << ToString(s.state_m.opp_prev) << ToString(s.state_m.self_prev)
          << ',' << ToString(s.state_o.opp_prev)
          << ToString(s.state_o.self_prev) << ',' << ToString(s.a_m) << ','
          << ToString(s.a_o) << ',' << s.r_m_extr << ',' << s.r_o_extr << ','
          << FormatReal(s.r_m_intr) << ',' << FormatReal(s.r_o_intr) << ','
          << FormatReal(s.eps) << '\n';
    }
  }
}

}  // namespace

void ExperimentPlan::Validate() const {
  if (games.empty()) throw std::invalid_argument("plan needs at least one game");
  if (pairing == Pairing::kAllUnorderedWithSelf && agents.empty()) {
    throw std::invalid_argument("plan needs at least one agent");
  }
  if (pairing == Pairing::kExplicit && explicit_pairs.empty()) {
    throw std::invalid_argument("explicit pairing needs a non-empty pairs list");
  }
  if (iterations < 2) throw std::invalid_argument("iterations must be >= 2");
  if (n_runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must be in (0,1]");
  }
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma must be in [0,1)");
  }
  schedule.Validate();
  for (const auto& agent : agents) agent.Validate();
  for (const auto& [m, o] : explicit_pairs) {
    m.Validate();
    o.Validate();
  }
  if (variants.long_run && *variants.long_run < 2) {
    throw std::invalid_argument("variants.long_run must be >= 2");
  }
  for (const double beta : variants.beta_sweep) {
    if (!(beta >= 0.0 && beta <= 1.0)) {
      throw std::invalid_argument("variants.beta_sweep values must be in [0,1]");
    }
  }
  if (variants.schedule_override) variants.schedule_override->Validate();
  if (outputs.steps_thinning < 1) {
    throw std::invalid_argument("outputs.steps_thinning must be >= 1");
  }
}

std::vector<std::pair<AgentSpec, AgentSpec>> ExperimentPlan::Pairings() const {
  if (pairing == Pairing::kExplicit) return explicit_pairs;
  std::vector<std::pair<AgentSpec, AgentSpec>> pairs;
  for (size_t i = 0; i < agents.size(); ++i) {
    for (size_t j = i; j < agents.size(); ++j) {
      pairs.emplace_back(agents[i], agents[j]);
    }
  }
  return pairs;
}

ExperimentPlan ParsePlan(std::string_view text, std::string_view origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string(origin) + ":" +
                             std::to_string(LineOfByteOffset(text, e.byte)) +
                             ": config parse error: " + e.what());
  }
  if (!root.is_object()) {
    throw std::runtime_error(std::string(origin) +
                             ": config root must be a JSON object");
  }

  RejectUnknownKeys(root, "plan",
                    {"game", "games", "agents", "pairing", "pairs",
                     "iterations", "runs", "base_seed", "alpha", "gamma",
                     "schedule", "variants", "outputs"});

  ExperimentPlan plan;
  if (root.contains("game")) {
    plan.games.push_back(GameKindFromString(root["game"].get<std::string>()));
  }
  if (root.contains("games")) {
    for (const auto& g : root["games"]) {
      plan.games.push_back(GameKindFromString(g.get<std::string>()));
    }
  }
  if (root.contains("iterations")) plan.iterations = root["iterations"].get<long>();
  if (root.contains("runs")) plan.n_runs = root["runs"].get<int>();
  if (root.contains("base_seed")) {
    plan.base_seed = root["base_seed"].get<std::uint64_t>();
  }
  if (root.contains("alpha")) plan.alpha = root["alpha"].get<double>();
  if (root.contains("gamma")) plan.gamma = root["gamma"].get<double>();
  if (root.contains("schedule")) {
    plan.schedule = ScheduleFromString(root["schedule"].get<std::string>());
  }

  if (root.contains("pairing")) {
    const std::string mode = root["pairing"].get<std::string>();
    if (mode == "all_unordered_pairs_with_self") {
      plan.pairing = ExperimentPlan::Pairing::kAllUnorderedWithSelf;
    } else if (mode == "explicit") {
      plan.pairing = ExperimentPlan::Pairing::kExplicit;
    } else {
      throw std::invalid_argument("unknown pairing mode: " + mode);
    }
  }
  if (root.contains("agents")) {
    for (const auto& a : root["agents"]) {
      plan.agents.push_back(BuildAgent(a.get<std::string>(), plan));
    }
  }
  if (root.contains("pairs")) {
    for (const auto& p : root["pairs"]) {
      if (!p.is_array() || p.size() != 2) {
        throw std::invalid_argument("each entry of pairs must be [m, o]");
      }
      plan.explicit_pairs.emplace_back(
          BuildAgent(p[0].get<std::string>(), plan),
          BuildAgent(p[1].get<std::string>(), plan));
    }
  }

  if (root.contains("variants")) {
    const json& variants = root["variants"];
    RejectUnknownKeys(variants, "variants",
                      {"long_run", "beta_sweep", "schedule_override"});
    if (variants.contains("long_run")) {
      plan.variants.long_run = variants["long_run"].get<long>();
    }
    if (variants.contains("beta_sweep")) {
      for (const auto& b : variants["beta_sweep"]) {
        plan.variants.beta_sweep.push_back(b.get<double>());
      }
    }
    if (variants.contains("schedule_override")) {
      plan.variants.schedule_override =
          ScheduleFromString(variants["schedule_override"].get<std::string>());
    }
  }

  if (root.contains("outputs")) {
    const json& outputs = root["outputs"];
    RejectUnknownKeys(outputs, "outputs",
                      {"summary_csv", "steps_csv", "steps_thinning", "json"});
    if (outputs.contains("summary_csv")) {
      plan.outputs.summary_csv = outputs["summary_csv"].get<std::string>();
    }
    if (outputs.contains("steps_csv")) {
      plan.outputs.steps_csv = outputs["steps_csv"].get<std::string>();
    }
    if (outputs.contains("steps_thinning")) {
      plan.outputs.steps_thinning = outputs["steps_thinning"].get<int>();
    }
    if (outputs.contains("json")) {
      plan.outputs.json = outputs["json"].get<std::string>();
    }
  }

  plan.Validate();
  return plan;
}

ExperimentPlan LoadPlan(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParsePlan(buffer.str(), path);
}

ResultBundle RunPlan(const ExperimentPlan& plan, int workers) {
  plan.Validate();
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");

  ResultBundle bundle;
  bundle.plan = plan;
  bundle.provenance = {std::string(kArtifactVersion), std::string(kPrngId),
                       NowUtcIso8601()};

  const long iterations = plan.variants.long_run.value_or(plan.iterations);
  const bool want_steps = !plan.outputs.steps_csv.empty();

  MatchupOptions options;
  options.workers = workers;
  options.episode.step_stride = want_steps ? plan.outputs.steps_thinning : 0;

  // "base" when no sweep is configured, otherwise one variant per beta.
  std::vector<std::pair<std::string, std::optional<double>>> variants;
  if (plan.variants.beta_sweep.empty()) {
    variants.emplace_back("base", std::nullopt);
  } else {
    for (const double beta : plan.variants.beta_sweep) {
      variants.emplace_back(VariantLabel(beta), beta);
    }
  }

  // Step rows are streamed matchup by matchup; the file only appears once
  // the whole plan has succeeded.
  std::optional<AtomicFileWriter> steps_writer;
  if (want_steps) {
    steps_writer.emplace(plan.outputs.steps_csv);
    steps_writer->stream()
        << "game,agent_m,agent_o,variant,run,t,state_m,state_o,"
           "a_m,a_o,r_m_extr,r_o_extr,r_m_intr,r_o_intr,eps\n";
  }

  const auto pairings = plan.Pairings();
  std::uint64_t task_index = 0;
  for (const GameKind game : plan.games) {
    for (const auto& base_pair : pairings) {
      for (const auto& [label, beta] : variants) {
        AgentSpec spec_m = base_pair.first;
        AgentSpec spec_o = base_pair.second;
        if (beta) {
          spec_m = WithBeta(spec_m, *beta);
          spec_o = WithBeta(spec_o, *beta);
        }
        if (plan.variants.schedule_override) {
          spec_m = WithSchedule(spec_m, *plan.variants.schedule_override);
          spec_o = WithSchedule(spec_o, *plan.variants.schedule_override);
        }
        const std::uint64_t seed = DeriveSeed(plan.base_seed, task_index++);
        const auto results =
            RunMatchup(spec_m, spec_o, game, iterations, plan.n_runs, seed,
                       options);
        PlanEntry entry{label, SummarizeMatchup(results)};
        if (want_steps) AppendStepsCsv(steps_writer->stream(), entry, results);
        bundle.entries.push_back(std::move(entry));
      }
    }
  }

  if (!plan.outputs.summary_csv.empty()) {
    EmitSummaryCsv(bundle, plan.outputs.summary_csv);
  }
  if (steps_writer) steps_writer->Commit();
  if (!plan.outputs.json.empty()) {
    EmitJson(bundle, plan.outputs.json);
  }
  return bundle;
}

std::string SummaryCsvString(const ResultBundle& bundle) {
  if (bundle.entries.empty()) {
    throw std::invalid_argument("cannot emit CSV for an empty bundle");
  }
  std::string out = kSummaryCsvHeader;
  out += '\n';
  for (const auto& entry : bundle.entries) AppendSummaryRow(out, entry);
  return out;
}

void EmitSummaryCsv(const ResultBundle& bundle, const std::string& path) {
  WriteFileAtomic(path, SummaryCsvString(bundle));
}

std::string ResultJsonString(const ResultBundle& bundle) {
  json j;
  j["provenance"] = {{"version", bundle.provenance.version},
                     {"prng", bundle.provenance.prng},
                     {"timestamp", bundle.provenance.timestamp}};
  j["plan"] = PlanToJson(bundle.plan);
  j["summaries"] = json::array();
  for (const auto& entry : bundle.entries) {
    const MatchupSummary& s = entry.summary;
    json row;
    row["game"] = ToString(s.game);
    row["agent_m"] = ToString(s.spec_m);
    row["agent_o"] = ToString(s.spec_o);
    row["variant"] = entry.variant;
    row["n_runs"] = s.n_runs;
    row["pct_cc"] = s.pct[0];
    row["pct_cd"] = s.pct[1];
    row["pct_dc"] = s.pct[2];
    row["pct_dd"] = s.pct[3];
    const std::pair<const char*, const MetricStats*> metrics[] = {
        {"collective", &s.collective}, {"gini", &s.gini},
        {"min", &s.min},               {"rm_extr", &s.r_m_extr},
        {"rm_intr", &s.r_m_intr},      {"ro_extr", &s.r_o_extr},
        {"ro_intr", &s.r_o_intr}};
    for (const auto& [name, stats] : metrics) {
      row[std::string("mean_") + name] = stats->mean;
      row[std::string("ci_") + name] = stats->ci95;
    }
    j["summaries"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

void EmitJson(const ResultBundle& bundle, const std::string& path) {
  WriteFileAtomic(path, ResultJsonString(bundle));
}

}  // namespace moralsim
