#ifndef PMLAB_CBP_H_
#define PMLAB_CBP_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "pmlab/analysis.h"
#include "pmlab/policy.h"

namespace pmlab {

inline constexpr double kDefaultAlpha = 1.01;

// f(t) = α^{1/3} t^{2/3} (ln t)^{1/3}
double DefaultSchedule(double alpha, double t);

struct CbpParams {
  double alpha = kDefaultAlpha;
  // η_k per action; empty means η_k = W_k^{2/3}.
  std::vector<double> eta;
  // f(t); empty means DefaultSchedule(alpha, t).
  std::function<double(double)> schedule;
};

// One entry per neighbor pair, in CellStructure::neighbors order:
// -1, 0 or +1.
using HalfSpaceArray = std::vector<std::int8_t>;

// δ̃_{i,j} = Σ_{k ∈ V} v_{i,j,k}·ν_k / n_k (canonical orientation).
double LossDifferenceEstimate(const PairObservers& observers,
                              std::span<const std::int64_t> counts,
                              std::span<const Eigen::VectorXd> cumulative);

// c_{i,j} = Σ_{k ∈ V} ‖v_{i,j,k}‖∞ sqrt(α ln t / n_k).
double ConfidenceBound(const PairObservers& observers,
                       std::span<const std::int64_t> counts, double alpha, double t);

// sgn δ̃ where |δ̃| >= c, else 0.
HalfSpaceArray HalfSpaces(std::span<const double> delta,
                          std::span<const double> confidence);

struct Polytope {
  std::vector<Action> actions;      // P(t)
  std::vector<ActionPair> pairs;    // N(t)
};

// Pareto actions whose cell, and neighbor pairs whose shared boundary, meet
// the open polytope {p : hs(i,j)(ℓ_i − ℓ_j)·p > 0 for every nonzero entry}.
Polytope GetPolytope(const Game& game, const CellStructure& cells,
                     const HalfSpaceArray& half_spaces, const Tolerances& tol = {});

// GetPolytope results keyed by the half-space array, plus the per-action
// membership masks CBP derives from them. Thread-safe; share one per game.
class PolytopeCache {
 public:
  struct Entry {
    Polytope polytope;
    // True when the half-spaces were mutually inconsistent (P(t) came back
    // empty) and the unrestricted (P, N) was used instead.
    bool fallback = false;
    std::vector<char> in_base;       // P(t) ∪ N⁺(t)
    std::vector<char> in_observers;  // V(t)
  };

  explicit PolytopeCache(std::shared_ptr<const GameAnalysis> analysis);

  const Entry& Get(const HalfSpaceArray& half_spaces);
  std::size_t size() const;

 private:
  Entry Compute(const HalfSpaceArray& half_spaces) const;

  std::shared_ptr<const GameAnalysis> analysis_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, std::unique_ptr<Entry>> entries_;
};

// Everything behind one CBP decision; see CbpPolicy::Explain.
struct CbpDecision {
  std::int64_t round = 0;
  Action action = 0;
  std::vector<double> delta;
  std::vector<double> confidence;
  HalfSpaceArray half_spaces;
  Polytope polytope;
  std::vector<Action> plus_actions;    // N⁺(t)
  std::vector<Action> observers;       // V(t)
  std::vector<Action> rarely_chosen;   // R(t)
  std::vector<Action> candidates;      // S(t)
};

class CbpPolicy : public Policy {
 public:
  // Throws Error(kInvalidPlan) if the analysis has no observer plan or the
  // plan does not cover the neighbor pairs, Error(kInvalidArgument) for
  // alpha <= 1 or a malformed eta.
  CbpPolicy(std::shared_ptr<const GameAnalysis> analysis, CbpParams params = {},
            std::shared_ptr<PolytopeCache> cache = nullptr);

  // Rounds 1..N play actions 1..N; afterwards argmax_{k ∈ S(t)} W_k²/n_k with
  // ties to the lowest index.
  Action ChooseAction() override;

  // Throws Error(kDimensionMismatch) unless the observation is a one-hot
  // vector of length s_action.
  void Update(Action action, std::span<const double> observation) override;

  // Same computation as ChooseAction with every intermediate set exposed.
  // Requires round() > N.
  CbpDecision Explain();

  // Index of the round about to be played, starting at 1.
  std::int64_t round() const { return round_; }
  bool initialized() const { return round_ > analysis_->game.num_actions(); }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  const std::vector<Eigen::VectorXd>& cumulative() const { return cumulative_; }
  const std::vector<double>& eta() const { return eta_; }
  double Schedule(double t) const;

  // δ̃ and c for every neighbor pair at the current round.
  void Estimates(std::vector<double>& delta, std::vector<double>& confidence) const;

 private:
  Action Decide();

  std::shared_ptr<const GameAnalysis> analysis_;
  std::shared_ptr<PolytopeCache> cache_;
  CbpParams params_;
  std::vector<double> eta_;
  std::vector<double> width_sq_;
  std::vector<const PairObservers*> pair_observers_;

  std::int64_t round_ = 1;
  std::vector<std::int64_t> counts_;
  std::vector<Eigen::VectorXd> cumulative_;

  // Scratch reused across rounds.
  std::vector<double> delta_;
  std::vector<double> confidence_;
  HalfSpaceArray half_spaces_;
  HalfSpaceArray last_key_;
  const PolytopeCache::Entry* last_entry_ = nullptr;
  std::vector<char> rare_;
  std::vector<char> candidate_;
};

}  // namespace pmlab

#endif  // PMLAB_CBP_H_
