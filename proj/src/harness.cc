#include "pmlab/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "pmlab/error.h"

namespace pmlab {

OpponentStrategy::OpponentStrategy(Eigen::VectorXd p) : p_(std::move(p)) {
  CheckSimplexPoint(p_, static_cast<int>(p_.size()));
  double total = 0.0;
  for (int j = 0; j < p_.size(); ++j) {
    total += p_(j);
    cdf_.push_back(total);
  }
}

Outcome OpponentStrategy::Sample(Rng& rng) const {
  const double u = UniformDouble(rng);
  for (std::size_t j = 0; j < cdf_.size(); ++j) {
    if (u < cdf_[j]) return static_cast<Outcome>(j);
  }
  // Round-off left the last cumulative value a hair under 1.
  Outcome last = static_cast<Outcome>(cdf_.size()) - 1;
  while (last > 0 && p_(last) == 0.0) --last;
  return last;
}

std::vector<std::int64_t> GeometricCheckpoints(std::int64_t horizon, double ratio) {
  std::vector<std::int64_t> out;
  for (std::int64_t t = 1; t < horizon;
       t = std::max(t + 1, static_cast<std::int64_t>(std::floor(t * ratio)))) {
    out.push_back(t);
  }
  if (horizon >= 1) out.push_back(horizon);
  return out;
}

std::string PolicyName(const PolicySpec& spec) {
  if (const auto* b = std::get_if<BaselineSpec>(&spec)) return BaselineName(*b);
  return "cbp";
}

void ValidateConfig(const SimulationConfig& config) {
  if (!config.analysis) throw Error(ErrorCode::kInvalidArgument, "config has no game");
  const Game& game = config.analysis->game;
  if (config.horizon < game.num_actions()) {
    throw Error(ErrorCode::kInvalidArgument, "horizon must be at least the action count");
  }
  if (config.runs < 1) throw Error(ErrorCode::kInvalidArgument, "runs must be >= 1");
  CheckSimplexPoint(config.opponent, game.num_outcomes());
  if (std::holds_alternative<CbpParams>(config.policy)) {
    if (config.analysis->game_class == GameClass::kHopeless) {
      throw Error(ErrorCode::kInvalidArgument, "CBP refuses hopeless games");
    }
    if (!config.analysis->plan) {
      throw Error(ErrorCode::kInvalidArgument, "game has no observer plan");
    }
  }
  const auto cps = ResolvedCheckpoints(config);
  if (cps.empty() || cps.back() != config.horizon ||
      !std::is_sorted(cps.begin(), cps.end()) || cps.front() < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "checkpoints must be increasing, positive and end at the horizon");
  }
}

std::vector<std::int64_t> ResolvedCheckpoints(const SimulationConfig& config) {
  return config.checkpoints.empty() ? GeometricCheckpoints(config.horizon)
                                    : config.checkpoints;
}

namespace {

std::uint64_t RunSeed(const SimulationConfig& config, int run_id) {
  return config.base_seed + static_cast<std::uint64_t>(run_id);
}

}  // namespace

std::unique_ptr<Policy> MakePolicy(const SimulationConfig& config, int run_id) {
  if (const auto* b = std::get_if<BaselineSpec>(&config.policy)) {
    // Separate stream from the opponent's.
    return std::make_unique<BaselinePolicy>(*b, config.analysis->game.num_actions(),
                                            RunSeed(config, run_id) ^ 0x9E3779B97F4A7C15ULL);
  }
  return std::make_unique<CbpPolicy>(config.analysis, std::get<CbpParams>(config.policy),
                                     config.polytope_cache);
}

RegretTrace PlayEpisode(const Game& game, Policy& policy,
                        const OpponentStrategy& opponent, std::int64_t horizon,
                        const std::vector<std::int64_t>& checkpoints, Rng& rng,
                        int run_id) {
  const Eigen::VectorXd expected = game.loss() * opponent.p();
  const double best = expected.minCoeff();
  Eigen::VectorXd gap = expected.array() - best;

  int max_symbols = 0;
  for (Action i = 0; i < game.num_actions(); ++i) {
    max_symbols = std::max(max_symbols, game.num_symbols(i));
  }
  std::vector<double> observation(max_symbols, 0.0);

  RegretTrace trace;
  trace.run_id = run_id;
  trace.points.reserve(checkpoints.size());
  auto next = checkpoints.begin();
  double loss = 0.0;
  double pseudo = 0.0;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const Action action = policy.ChooseAction();
    if (action < 0 || action >= game.num_actions()) {
      throw Error(ErrorCode::kInvalidArgument, "policy returned an invalid action");
    }
    const Outcome outcome = opponent.Sample(rng);
    loss += game.loss()(action, outcome);
    pseudo += gap(action);

    const int s = game.num_symbols(action);
    std::fill_n(observation.begin(), s, 0.0);
    observation[game.SymbolIndex(action, outcome)] = 1.0;
    policy.Update(action, std::span<const double>(observation.data(), s));

    if (next != checkpoints.end() && *next == t) {
      trace.points.push_back({t, loss - static_cast<double>(t) * best, pseudo});
      ++next;
    }
  }
  return trace;
}

RegretTrace RunEpisode(const SimulationConfig& config, int run_id) {
  ValidateConfig(config);
  const OpponentStrategy opponent(config.opponent);
  auto policy = MakePolicy(config, run_id);
  Rng rng(RunSeed(config, run_id));
  return PlayEpisode(config.analysis->game, *policy, opponent, config.horizon,
                     ResolvedCheckpoints(config), rng, run_id);
}

int ResolveThreadCount(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PM_LAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

BatchReport RunBatch(const std::vector<SimulationConfig>& input, int threads) {
  BatchReport report;
  if (input.empty()) return report;
  for (const auto& c : input) ValidateConfig(c);
  report.checkpoints = ResolvedCheckpoints(input.front());
  for (const auto& c : input) {
    if (c.horizon != input.front().horizon || ResolvedCheckpoints(c) != report.checkpoints) {
      throw Error(ErrorCode::kMixedSchedules,
                  "configs in one batch must share horizon and checkpoints");
    }
  }
  std::vector<SimulationConfig> configs = input;
  for (auto& c : configs) {
    if (std::holds_alternative<CbpParams>(c.policy) && !c.polytope_cache) {
      c.polytope_cache = std::make_shared<PolytopeCache>(c.analysis);
    }
  }

  std::vector<std::pair<int, int>> jobs;
  for (int c = 0; c < static_cast<int>(configs.size()); ++c) {
    for (int r = 0; r < configs[c].runs; ++r) jobs.emplace_back(c, r);
  }
  std::vector<RegretTrace> traces(jobs.size());
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t j = cursor++; j < jobs.size(); j = cursor++) {
      try {
        traces[j] = RunEpisode(configs[jobs[j].first], jobs[j].second);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        cursor = jobs.size();
      }
    }
  };
  const int n_threads =
      std::min<int>(ResolveThreadCount(threads), static_cast<int>(jobs.size()));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  const std::size_t n_points = report.checkpoints.size();
  report.max_mean_pseudo.assign(n_points, -std::numeric_limits<double>::infinity());
  std::size_t j = 0;
  for (const auto& c : configs) {
    ConfigResult result;
    result.label = c.label;
    result.mean.resize(n_points);
    for (int r = 0; r < c.runs; ++r, ++j) result.runs.push_back(std::move(traces[j]));
    for (std::size_t k = 0; k < n_points; ++k) {
      AggregatePoint& a = result.mean[k];
      a.t = report.checkpoints[k];
      for (const auto& run : result.runs) {
        a.mean_pseudo += run.points[k].pseudo;
        a.mean_realized += run.points[k].realized;
      }
      a.mean_pseudo /= c.runs;
      a.mean_realized /= c.runs;
      report.max_mean_pseudo[k] = std::max(report.max_mean_pseudo[k], a.mean_pseudo);
    }
    report.configs.push_back(std::move(result));
  }
  return report;
}

namespace {

std::string Num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace

void WriteRunsCsv(std::ostream& out, const BatchReport& report) {
  out << "config_id,run_id,t,realized_regret,pseudo_regret\n";
  for (std::size_t c = 0; c < report.configs.size(); ++c) {
    for (const auto& run : report.configs[c].runs) {
      for (const auto& p : run.points) {
        out << c << ',' << run.run_id << ',' << p.t << ',' << Num(p.realized) << ','
            << Num(p.pseudo) << '\n';
      }
    }
  }
}

void WriteAggregateCsv(std::ostream& out, const BatchReport& report) {
  out << "config_id,t,mean_pseudo_regret,mean_realized_regret\n";
  for (std::size_t c = 0; c < report.configs.size(); ++c) {
    for (const auto& a : report.configs[c].mean) {
      out << c << ',' << a.t << ',' << Num(a.mean_pseudo) << ',' << Num(a.mean_realized)
          << '\n';
    }
  }
}

void WriteMaxCsv(std::ostream& out, const BatchReport& report) {
  out << "t,max_mean_pseudo_regret\n";
  for (std::size_t k = 0; k < report.checkpoints.size(); ++k) {
    out << report.checkpoints[k] << ',' << Num(report.max_mean_pseudo[k]) << '\n';
  }
}

double LogLogSlope(const std::vector<std::int64_t>& t, const std::vector<double>& y,
                   double lo, double hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t k = 0; k < t.size() && k < y.size(); ++k) {
    const double tk = static_cast<double>(t[k]);
    if (tk < lo || tk > hi || !(y[k] > 0.0)) continue;
    const double x = std::log(tk);
    const double v = std::log(y[k]);
    sx += x;
    sy += v;
    sxx += x * x;
    sxy += x * v;
    ++n;
  }
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "need two positive points for a slope");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace pmlab
