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

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "moralsim/experiment.h"

namespace moralsim {
namespace {

namespace fs = std::filesystem;

int DefaultWorkers() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

// Relative output paths resolve under --out, else $MORALSIM_OUT_DIR, else
// the current directory.
std::string ResolveOutputPath(const std::string& path,
                              const std::string& out_dir) {
  if (path.empty() || fs::path(path).is_absolute()) return path;
  std::string base = out_dir;
  if (base.empty()) {
    if (const char* env = std::getenv("MORALSIM_OUT_DIR")) base = env;
  }
  if (base.empty()) return path;
  return (fs::path(base) / path).string();
}

struct RunArgs {
  std::string config;
  int workers = DefaultWorkers();
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out_dir;
};

int DoRun(const RunArgs& args, std::ostream& out) {
  ExperimentPlan plan = LoadPlan(args.config);
  if (args.seed_set) plan.base_seed = args.seed;
  plan.outputs.summary_csv =
      ResolveOutputPath(plan.outputs.summary_csv, args.out_dir);
  plan.outputs.steps_csv =
      ResolveOutputPath(plan.outputs.steps_csv, args.out_dir);
  plan.outputs.json = ResolveOutputPath(plan.outputs.json, args.out_dir);

  const ResultBundle bundle = RunPlan(plan, args.workers);
  out << "ran " << bundle.entries.size() << " matchups ("
      << plan.Pairings().size() << " pairings x " << plan.games.size()
      << " games)\n";
  for (const std::string* path :
       {&plan.outputs.summary_csv, &plan.outputs.steps_csv,
        &plan.outputs.json}) {
    if (!path->empty()) out << "wrote " << *path << "\n";
  }
  if (plan.outputs.summary_csv.empty() && plan.outputs.json.empty()) {
    out << SummaryCsvString(bundle);
  }
  return 0;
}

struct PairArgs {
  std::string game = "IPD";
  std::string m;
  std::string o;
  int runs = 100;
  long iters = 10000;
  std::uint64_t seed = 0;
  int workers = DefaultWorkers();
  double alpha = 0.01;
  double gamma = 0.90;
  std::string schedule = "linear";
};

int DoPair(const PairArgs& args, std::ostream& out) {
  ExperimentPlan plan;
  plan.alpha = args.alpha;
  plan.gamma = args.gamma;
  plan.schedule = ScheduleFromString(args.schedule);

  auto build = [&plan](const std::string& label) {
    AgentSpec spec = AgentSpecFromString(label);
    if (spec.is_learner()) {
      spec.params.alpha = plan.alpha;
      spec.params.gamma = plan.gamma;
      spec.params.schedule = plan.schedule;
    }
    return spec;
  };
  const AgentSpec spec_m = build(args.m);
  const AgentSpec spec_o = build(args.o);
  const GameKind game = GameKindFromString(args.game);

  MatchupOptions options;
  options.workers = args.workers;
  options.episode.step_stride = 0;
  const auto results = RunMatchup(spec_m, spec_o, game, args.iters, args.runs,
                                  args.seed, options);

  ResultBundle bundle;
  bundle.entries.push_back({"base", SummarizeMatchup(results)});
  out << SummaryCsvString(bundle);
  return 0;
}

struct OracleArgs {
  std::string game = "IPD";
  std::string opponent;
  std::string framework;
  double gamma = 0.90;
};

int DoOracle(const OracleArgs& args, std::ostream& out) {
  const GreedyPolicy policy = OracleBestResponse(
      StaticStrategyFromString(args.opponent), GameKindFromString(args.game),
      MoralFrameworkFromString(args.framework), args.gamma);
  bool uniform = true;
  for (int i = 0; i < kNumStates; ++i) {
    const ObservedState s = StateFromIndex(i);
    out << "state " << StateKey(s) << " -> ";
    if (policy[i].tied) {
      out << "tie(C|D)";
      uniform = false;
    } else {
      out << ToString(policy[i].action);
      if (policy[i].action != policy[0].action) uniform = false;
    }
    out << "\n";
  }
  if (uniform && !policy[0].tied) {
    out << "all states -> " << ToString(policy[0].action) << "\n";
  }
  return 0;
}

struct TraceArgs {
  std::string game = "IPD";
  std::string m;
  std::string o;
  std::uint64_t seed = 0;
  int last = 20;
  long iters = 10000;
  bool qtables = false;
};

int DoTrace(const TraceArgs& args, std::ostream& out) {
  const AgentSpec spec_m = AgentSpecFromString(args.m);
  const AgentSpec spec_o = AgentSpecFromString(args.o);
  EpisodeOptions options;
  options.step_stride = args.last > EpisodeOptions::kTailSteps ? 1 : 0;
  const EpisodeResult result =
      RunEpisode(spec_m, spec_o, GameKindFromString(args.game), args.iters,
                 args.seed, options);
  const EndTrace trace = LastKTrace(result, args.last);

  out << "last " << args.last << " of " << result.iterations
      << " steps, seed " << result.seed << " (action|(opp_prev,self_prev))\n";
  for (size_t i = 0; i < trace.m.size(); ++i) {
    const auto& m = trace.m[i];
    const auto& o = trace.o[i];
    out << "t=" << m.t << "  M: " << ToString(m.action) << "|("
        << StateKey(m.state) << ")  O: " << ToString(o.action) << "|("
        << StateKey(o.state) << ")\n";
  }
  if (args.qtables) {
    if (result.qtable_m) out << "qtable_m " << QTableToJson(*result.qtable_m) << "\n";
    if (result.qtable_o) out << "qtable_o " << QTableToJson(*result.qtable_o) << "\n";
  }
  return 0;
}

}  // namespace

int CliMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Iterated social dilemma simulator for intrinsically "
               "motivated learning agents"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Execute a JSON experiment plan");
  run->add_option("config", run_args.config, "Plan file")->required();
  run->add_option("--workers", run_args.workers, "Worker threads");
  run->add_option("--seed", run_args.seed, "Override the plan's base seed")
      ->each([&run_args](const std::string&) { run_args.seed_set = true; });
  run->add_option("--out", run_args.out_dir,
                  "Directory for relative output paths");

  PairArgs pair_args;
  CLI::App* pair = app.add_subcommand("pair", "Run one matchup and print its "
                                              "summary row");
  pair->add_option("--game", pair_args.game, "IPD, IVD or ISH");
  pair->add_option("--m", pair_args.m, "Player M spec")->required();
  pair->add_option("--o", pair_args.o, "Player O spec")->required();
  pair->add_option("--runs", pair_args.runs, "Number of runs");
  pair->add_option("--iters", pair_args.iters, "Iterations per run");
  pair->add_option("--seed", pair_args.seed, "Base seed");
  pair->add_option("--workers", pair_args.workers, "Worker threads");
  pair->add_option("--alpha", pair_args.alpha, "Learning rate");
  pair->add_option("--gamma", pair_args.gamma, "Discount factor");
  pair->add_option("--schedule", pair_args.schedule,
                   "linear or constant:<eps>");

  OracleArgs oracle_args;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "Value-iteration best response vs a deterministic static "
                "opponent");
  oracle->add_option("--game", oracle_args.game, "IPD, IVD or ISH");
  oracle->add_option("--opponent", oracle_args.opponent, "AC, AD or TFT")
      ->required();
  oracle->add_option("--framework", oracle_args.framework, "Learner framework")
      ->required();
  oracle->add_option("--gamma", oracle_args.gamma, "Discount factor");

  TraceArgs trace_args;
  CLI::App* trace = app.add_subcommand(
      "trace", "Print the end-of-episode trace of one seeded run");
  trace->add_option("--game", trace_args.game, "IPD, IVD or ISH");
  trace->add_option("--m", trace_args.m, "Player M spec")->required();
  trace->add_option("--o", trace_args.o, "Player O spec")->required();
  trace->add_option("--seed", trace_args.seed, "Episode seed");
  trace->add_option("--last", trace_args.last, "Trace length");
  trace->add_option("--iters", trace_args.iters, "Iterations");
  trace->add_flag("--qtables", trace_args.qtables,
                  "Also print final Q-table snapshots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (run->parsed()) return DoRun(run_args, out);
    if (pair->parsed()) return DoPair(pair_args, out);
    if (oracle->parsed()) return DoOracle(oracle_args, out);
    return DoTrace(trace_args, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int CliMain(int argc, const char* const* argv) {
  return CliMain(argc, argv, std::cout, std::cerr);
}

}  // namespace moralsim
