#ifndef PMLAB_OBSERVERS_H_
#define PMLAB_OBSERVERS_H_

#include <vector>

#include <Eigen/Dense>

#include "pmlab/game.h"
#include "pmlab/geometry.h"

namespace pmlab {

enum class ObserverObjective {
  // minimize max_{k ∈ V} ‖v_k‖∞ for each pair
  kMinMaxNorm,
  // minimize Σ_{k ∈ V} ‖v_k‖∞ for each pair
  kMinSumOfNorms,
};

inline constexpr ObserverObjective kObserverObjective = ObserverObjective::kMinMaxNorm;

struct ObserverEntry {
  Action action = 0;
  // v_{i,j,k} for the canonical orientation (i = pair.first, j = pair.second).
  Eigen::VectorXd vector;
};

struct PairObservers {
  ActionPair pair;
  // Sorted by action; the actions form V_{i,j}.
  std::vector<ObserverEntry> observers;
  // ‖Σ_k S_k^T v_k − (ℓ_i − ℓ_j)‖∞ as built.
  double residual = 0.0;
};

// W_k = max over pairs with k ∈ V of ‖v_k‖∞; zero for actions that observe
// nothing.
std::vector<double> ConfidenceWidths(const std::vector<PairObservers>& pairs,
                                     int num_actions);

class ObserverPlan {
 public:
  ObserverPlan(int num_actions, std::vector<PairObservers> pairs);

  int num_actions() const { return static_cast<int>(widths_.size()); }
  const std::vector<PairObservers>& pairs() const { return pairs_; }
  const std::vector<double>& widths() const { return widths_; }
  double width(Action k) const { return widths_[k]; }

  // Throws Error(kInvalidArgument) if the pair is not in the plan.
  const PairObservers& ForPair(ActionPair pair) const;

  // V_{i,j}; symmetric in (i, j).
  std::vector<Action> ObserverSet(Action i, Action j) const;

  // v_{i,j,k}; v_{j,i,k} = -v_{i,j,k}. Throws if k ∉ V_{i,j}.
  Eigen::VectorXd ObserverVector(Action i, Action j, Action k) const;

 private:
  std::vector<PairObservers> pairs_;
  std::vector<double> widths_;
};

// Greedy observer sets (N⁺, then extra actions by increasing index until
// ℓ_i − ℓ_j is spanned) and LP-optimal observer vectors. Throws
// Error(kNotGloballyObservable) if even the full action set fails.
ObserverPlan BuildObserverPlan(const Game& game, const CellStructure& cells,
                               const Tolerances& tol = {});

}  // namespace pmlab

#endif  // PMLAB_OBSERVERS_H_
