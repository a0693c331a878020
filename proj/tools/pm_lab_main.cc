// pm-lab: analyze partial-monitoring games, simulate policies, sweep the
// benchmark settings.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pmlab/analysis.h"
#include "pmlab/catalog.h"
#include "pmlab/error.h"
#include "pmlab/game_io.h"
#include "pmlab/harness.h"

namespace {

using namespace pmlab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitHopeless = 2;

struct GameSource {
  std::string file;
  std::string preset;

  void Register(CLI::App* cmd) {
    auto* g = cmd->add_option("--game", file, "game description JSON file");
    auto* p = cmd->add_option("--preset", preset, "easy | dynamic-pricing:N,M,c");
    g->excludes(p);
    p->excludes(g);
  }

  Game Load() const {
    if (!file.empty()) return LoadGameDocument(file).game;
    if (!preset.empty()) return PresetGame(preset);
    throw Error(ErrorCode::kInvalidArgument, "one of --game or --preset is required");
  }
};

struct RefuseHopeless {};

std::string Set(const std::vector<Action>& actions) {
  std::string out = "{";
  for (std::size_t k = 0; k < actions.size(); ++k) {
    out += (k ? "," : "") + std::to_string(actions[k] + 1);
  }
  return out + "}";
}

std::string Pair(ActionPair p) { return Set({p.first, p.second}); }

void PrintReport(const GameAnalysis& a, std::ostream& out) {
  const Game& game = a.game;
  const CellStructure& cells = a.cells;
  out << "game: " << game.name() << " (N=" << game.num_actions()
      << ", M=" << game.num_outcomes() << ")\n";
  out << "class: " << GameClassName(a.game_class) << "\n";
  out << "actions:\n";
  for (Action i = 0; i < game.num_actions(); ++i) {
    out << "  " << i + 1 << "  " << ActionClassName(cells.action_class[i]) << "\n";
  }
  out << "pareto actions: " << cells.pareto.size() << " " << Set(cells.pareto) << "\n";
  out << "neighbor pairs: " << cells.neighbors.size() << "\n";
  for (const ActionPair& pair : cells.neighbors) {
    out << "  " << Pair(pair) << "  N+ = " << Set(cells.plus_sets.at(pair)) << "  "
        << (cells.IsLocallyObservable(pair) ? "locally observable" : "not locally observable")
        << "\n";
  }
  out << "locally observable pairs: " << cells.locally_observable_pairs.size();
  for (const ActionPair& pair : cells.locally_observable_pairs) out << " " << Pair(pair);
  out << "\n";
  out << "globally observable: " << (a.globally_observable ? "yes" : "no") << "\n";
  if (a.plan) {
    out << "observer plan:\n";
    for (const PairObservers& p : a.plan->pairs()) {
      std::vector<Action> v;
      for (const ObserverEntry& e : p.observers) v.push_back(e.action);
      out << "  " << Pair(p.pair) << "  V = " << Set(v) << "  residual " << p.residual << "\n";
    }
    out << "widths:";
    for (Action k = 0; k < game.num_actions(); ++k) {
      out << " W" << k + 1 << "=" << a.plan->width(k);
    }
    out << "\n";
  }
}

Eigen::VectorXd ParseOpponent(const std::string& text, int m) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(field, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != field.size() || !std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "bad opponent entry '" + field + "'");
    }
    values.push_back(v);
  }
  if (static_cast<int>(values.size()) != m) {
    throw Error(ErrorCode::kInvalidArgument, "opponent has " + std::to_string(values.size()) +
                                                 " entries, game has " + std::to_string(m) +
                                                 " outcomes");
  }
  Eigen::VectorXd p = Eigen::Map<Eigen::VectorXd>(values.data(), m);
  if (p.minCoeff() < 0.0) throw Error(ErrorCode::kInvalidArgument, "opponent has a negative entry");
  if (std::abs(p.sum() - 1.0) > 1e-6) {
    throw Error(ErrorCode::kInvalidArgument, "opponent does not sum to 1");
  }
  return p / p.sum();
}

PolicySpec ParsePolicy(const std::string& text, double alpha) {
  if (text == "cbp") {
    CbpParams params;
    params.alpha = alpha;
    return params;
  }
  if (text == "random") return BaselineSpec::UniformRandom();
  if (text.starts_with("fixed:")) {
    const std::string index = text.substr(6);
    std::size_t used = 0;
    int i = 0;
    try {
      i = std::stoi(index, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used == index.size() && i >= 1) return BaselineSpec::Fixed(i - 1);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown policy '" + text + "'");
}

std::shared_ptr<const GameAnalysis> Analyze(Game game) {
  return std::make_shared<const GameAnalysis>(AnalyzeGame(std::move(game)));
}

void CheckLearnable(const GameAnalysis& a, const PolicySpec& policy) {
  if (std::holds_alternative<CbpParams>(policy) && a.game_class == GameClass::kHopeless) {
    throw RefuseHopeless{};
  }
}

void WriteFile(const std::filesystem::path& path,
               void (*writer)(std::ostream&, const BatchReport&), const BatchReport& report) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + path.string() + "'");
  writer(out, report);
}

std::filesystem::path AggregatePath(const std::filesystem::path& runs) {
  std::filesystem::path out = runs;
  out.replace_filename(runs.stem().string() + ".aggregate.csv");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite stochastic partial monitoring: analysis, CBP, regret experiments"};
  app.require_subcommand(1);

  GameSource analyze_source;
  bool json = false;
  bool require_learnable = false;
  auto* analyze = app.add_subcommand("analyze", "cell decomposition and observability report");
  analyze_source.Register(analyze);
  analyze->add_flag("--json", json, "machine-readable output");
  analyze->add_flag("--require-learnable", require_learnable, "exit 2 for hopeless games");

  GameSource sim_source;
  std::string policy = "cbp";
  std::string opponent;
  std::int64_t horizon = 10000;
  int runs = 1;
  std::uint64_t seed = 0;
  double alpha = kDefaultAlpha;
  std::string out_path;
  int threads = 0;
  auto* simulate = app.add_subcommand("simulate", "simulate one policy against one opponent");
  sim_source.Register(simulate);
  simulate->add_option("--policy", policy, "cbp | random | fixed:i")->capture_default_str();
  simulate->add_option("--opponent", opponent, "p1,p2,...,pM")->required();
  simulate->add_option("--horizon", horizon, "rounds T")->capture_default_str();
  simulate->add_option("--runs", runs, "replications R")->capture_default_str();
  simulate->add_option("--seed", seed, "base seed")->capture_default_str();
  simulate->add_option("--alpha", alpha, "CBP alpha (> 1)")->capture_default_str();
  simulate->add_option("--out", out_path, "per-run CSV; aggregate goes to <stem>.aggregate.csv")
      ->required();
  simulate->add_option("--threads", threads, "worker threads (0 = PM_LAB_THREADS or auto)");

  std::string setting;
  std::string sweep_dir;
  std::string sweep_policy = "cbp";
  auto* sweep = app.add_subcommand("sweep", "run every opponent of a catalog setting");
  sweep->add_option("--setting", setting, "benign | harsh | easy")->required();
  sweep->add_option("--policy", sweep_policy, "cbp | random | fixed:i")->capture_default_str();
  sweep->add_option("--horizon", horizon, "rounds T")->capture_default_str();
  sweep->add_option("--runs", runs, "replications per opponent")->capture_default_str();
  sweep->add_option("--seed", seed, "base seed")->capture_default_str();
  sweep->add_option("--alpha", alpha, "CBP alpha (> 1)")->capture_default_str();
  sweep->add_option("--out", sweep_dir, "output directory (created)")->required();
  sweep->add_option("--threads", threads, "worker threads (0 = PM_LAB_THREADS or auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze) {
      const auto a = Analyze(analyze_source.Load());
      if (json) {
        std::cout << AnalysisToJson(*a).dump(2) << "\n";
      } else {
        PrintReport(*a, std::cout);
      }
      if (require_learnable && a->game_class == GameClass::kHopeless) {
        std::cerr << "error: game is hopeless\n";
        return kExitHopeless;
      }
      return kExitOk;
    }

    if (*simulate) {
      const auto a = Analyze(sim_source.Load());
      SimulationConfig config;
      config.analysis = a;
      config.policy = ParsePolicy(policy, alpha);
      CheckLearnable(*a, config.policy);
      config.opponent = ParseOpponent(opponent, a->game.num_outcomes());
      config.horizon = horizon;
      config.runs = runs;
      config.base_seed = seed;
      config.label = PolicyName(config.policy);
      const BatchReport report = RunBatch({config}, threads);
      const std::filesystem::path runs_path(out_path);
      WriteFile(runs_path, WriteRunsCsv, report);
      WriteFile(AggregatePath(runs_path), WriteAggregateCsv, report);
      const AggregatePoint& last = report.configs[0].mean.back();
      std::cout << "policy " << config.label << ", T=" << last.t << ", runs=" << runs
                << ": mean pseudo-regret " << last.mean_pseudo << ", mean realized regret "
                << last.mean_realized << "\n";
      return kExitOk;
    }

    if (*sweep) {
      const NamedSetting s = FindSetting(setting);
      const auto a = Analyze(s.game);
      const PolicySpec spec = ParsePolicy(sweep_policy, alpha);
      CheckLearnable(*a, spec);
      std::vector<SimulationConfig> configs;
      auto cache = std::holds_alternative<CbpParams>(spec) ? std::make_shared<PolytopeCache>(a)
                                                           : nullptr;
      for (const LabeledOpponent& o : s.opponents) {
        SimulationConfig c;
        c.analysis = a;
        c.policy = spec;
        c.opponent = o.p;
        c.horizon = horizon;
        c.runs = runs;
        c.base_seed = seed;
        c.label = o.label;
        c.polytope_cache = cache;
        configs.push_back(std::move(c));
      }
      const BatchReport report = RunBatch(configs, threads);
      const std::filesystem::path dir(sweep_dir);
      std::filesystem::create_directories(dir);
      WriteFile(dir / "runs.csv", WriteRunsCsv, report);
      WriteFile(dir / "aggregate.csv", WriteAggregateCsv, report);
      WriteFile(dir / "max.csv", WriteMaxCsv, report);
      std::ofstream(dir / "setting.json") << SettingToJson(s).dump(2) << "\n";
      std::cout << "setting " << s.name << ", " << configs.size() << " opponents, T="
                << report.checkpoints.back() << ": max mean pseudo-regret "
                << report.max_mean_pseudo.back() << "\n";
      return kExitOk;
    }
  } catch (const RefuseHopeless&) {
    std::cerr << "error: cbp refuses hopeless games\n";
    return kExitHopeless;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
