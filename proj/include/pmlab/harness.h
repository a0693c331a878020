#ifndef PMLAB_HARNESS_H_
#define PMLAB_HARNESS_H_

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "pmlab/analysis.h"
#include "pmlab/baselines.h"
#include "pmlab/cbp.h"
#include "pmlab/policy.h"
#include "pmlab/random.h"

namespace pmlab {

inline constexpr double kCheckpointRatio = 1.2;

// i.i.d. outcome distribution p*.
class OpponentStrategy {
 public:
  // Throws Error(kInvalidArgument) unless p is a simplex point.
  explicit OpponentStrategy(Eigen::VectorXd p);

  const Eigen::VectorXd& p() const { return p_; }
  // Inverse-CDF draw.
  Outcome Sample(Rng& rng) const;

 private:
  Eigen::VectorXd p_;
  std::vector<double> cdf_;
};

// 1, then t -> max(t + 1, floor(1.2 t)) while below the horizon; the horizon
// itself is always the last entry.
std::vector<std::int64_t> GeometricCheckpoints(std::int64_t horizon,
                                               double ratio = kCheckpointRatio);

using PolicySpec = std::variant<CbpParams, BaselineSpec>;
std::string PolicyName(const PolicySpec& spec);

struct SimulationConfig {
  std::shared_ptr<const GameAnalysis> analysis;
  PolicySpec policy = CbpParams{};
  Eigen::VectorXd opponent;
  std::int64_t horizon = 0;
  int runs = 1;
  std::uint64_t base_seed = 0;
  // Empty means GeometricCheckpoints(horizon).
  std::vector<std::int64_t> checkpoints;
  std::string label;
  // Shared by every CBP run of this config when set; created per batch
  // otherwise.
  std::shared_ptr<PolytopeCache> polytope_cache;
};

struct RegretPoint {
  std::int64_t t = 0;
  double realized = 0.0;
  double pseudo = 0.0;
};

struct RegretTrace {
  int run_id = 0;
  std::vector<RegretPoint> points;
};

// Throws Error(kInvalidArgument) on a bad config (T < N, R < 1, bad p*, CBP
// on a game without an observer plan or a hopeless game).
void ValidateConfig(const SimulationConfig& config);

std::vector<std::int64_t> ResolvedCheckpoints(const SimulationConfig& config);

std::unique_ptr<Policy> MakePolicy(const SimulationConfig& config, int run_id);

// Plays `horizon` rounds of `policy` against `opponent`. The policy only ever
// receives S_{I_t} e_{J_t}.
RegretTrace PlayEpisode(const Game& game, Policy& policy,
                        const OpponentStrategy& opponent, std::int64_t horizon,
                        const std::vector<std::int64_t>& checkpoints, Rng& rng,
                        int run_id = 0);

// Seed = base_seed + run_id.
RegretTrace RunEpisode(const SimulationConfig& config, int run_id);

struct AggregatePoint {
  std::int64_t t = 0;
  double mean_pseudo = 0.0;
  double mean_realized = 0.0;
};

struct ConfigResult {
  std::string label;
  std::vector<RegretTrace> runs;
  std::vector<AggregatePoint> mean;
};

struct BatchReport {
  std::vector<std::int64_t> checkpoints;
  std::vector<ConfigResult> configs;
  // Pointwise maximum over configs of the mean pseudo-regret.
  std::vector<double> max_mean_pseudo;
};

// 0 means "use PM_LAB_THREADS if set and positive, else hardware
// concurrency".
int ResolveThreadCount(int requested);

// Runs every (config, run) pair, possibly in parallel, and folds results in
// (config, run_id) order. Throws Error(kMixedSchedules) if configs disagree
// on horizon or checkpoints.
BatchReport RunBatch(const std::vector<SimulationConfig>& configs, int threads = 0);

// config_id,run_id,t,realized_regret,pseudo_regret
void WriteRunsCsv(std::ostream& out, const BatchReport& report);
// config_id,t,mean_pseudo_regret,mean_realized_regret
void WriteAggregateCsv(std::ostream& out, const BatchReport& report);
// t,max_mean_pseudo_regret
void WriteMaxCsv(std::ostream& out, const BatchReport& report);

// Least-squares slope of log(y) against log(t) over checkpoints in [lo, hi]
// with y > 0.
double LogLogSlope(const std::vector<std::int64_t>& t, const std::vector<double>& y,
                   double lo, double hi);

}  // namespace pmlab

#endif  // PMLAB_HARNESS_H_
