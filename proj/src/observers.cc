#include "pmlab/observers.h"

#include <algorithm>
#include <string>

#include "pmlab/error.h"
#include "pmlab/lp.h"

namespace pmlab {

std::vector<double> ConfidenceWidths(const std::vector<PairObservers>& pairs,
                                     int num_actions) {
  std::vector<double> widths(num_actions, 0.0);
  for (const PairObservers& p : pairs) {
    for (const ObserverEntry& e : p.observers) {
      const double norm = e.vector.size() ? e.vector.cwiseAbs().maxCoeff() : 0.0;
      widths[e.action] = std::max(widths[e.action], norm);
    }
  }
  return widths;
}

ObserverPlan::ObserverPlan(int num_actions, std::vector<PairObservers> pairs)
    : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end(),
            [](const PairObservers& a, const PairObservers& b) { return a.pair < b.pair; });
  widths_ = ConfidenceWidths(pairs_, num_actions);
}

const PairObservers& ObserverPlan::ForPair(ActionPair pair) const {
  auto it = std::lower_bound(
      pairs_.begin(), pairs_.end(), pair,
      [](const PairObservers& p, const ActionPair& key) { return p.pair < key; });
  if (it == pairs_.end() || it->pair != pair) {
    throw Error(ErrorCode::kInvalidArgument,
                "pair {" + std::to_string(pair.first + 1) + "," +
                    std::to_string(pair.second + 1) + "} has no observers");
  }
  return *it;
}

std::vector<Action> ObserverPlan::ObserverSet(Action i, Action j) const {
  std::vector<Action> out;
  for (const ObserverEntry& e : ForPair(ActionPair::Of(i, j)).observers) {
    out.push_back(e.action);
  }
  return out;
}

Eigen::VectorXd ObserverPlan::ObserverVector(Action i, Action j, Action k) const {
  for (const ObserverEntry& e : ForPair(ActionPair::Of(i, j)).observers) {
    if (e.action == k) return i < j ? e.vector : Eigen::VectorXd(-e.vector);
  }
  throw Error(ErrorCode::kInvalidArgument,
              "action " + std::to_string(k + 1) + " is not an observer of the pair");
}

namespace {

// Solves Σ_k S_k^T v_k = target for k in `actions` with the configured norm
// objective, then removes the LP's round-off with one least-squares step.
PairObservers SolveObserverVectors(const Game& game, ActionPair pair,
                                   const std::vector<Action>& actions,
                                   const Eigen::VectorXd& target) {
  const Eigen::MatrixXd stacked = StackedSignalTranspose(game, actions);
  const int m = game.num_outcomes();
  const int s = static_cast<int>(stacked.cols());
  const int bounds = kObserverObjective == ObserverObjective::kMinMaxNorm
                         ? 1
                         : static_cast<int>(actions.size());
  // Variables: v+ (s), v- (s), t (bounds).
  const int n = 2 * s + bounds;
  lp::LinearProgram program(n);
  for (int l = 0; l < m; ++l) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(n);
    row.head(s) = stacked.row(l).transpose();
    row.segment(s, s) = -stacked.row(l).transpose();
    program.AddEqual(std::move(row), target(l));
  }
  int col = 0;
  for (std::size_t a = 0; a < actions.size(); ++a) {
    const int bound_index = 2 * s + (bounds == 1 ? 0 : static_cast<int>(a));
    for (int r = 0; r < game.num_symbols(actions[a]); ++r, ++col) {
      Eigen::VectorXd up = Eigen::VectorXd::Zero(n);
      up(col) = 1.0;
      up(s + col) = -1.0;
      up(bound_index) = -1.0;
      Eigen::VectorXd down = -up;
      down(bound_index) = -1.0;
      program.AddLessEqual(std::move(up), 0.0);
      program.AddLessEqual(std::move(down), 0.0);
    }
  }
  Eigen::VectorXd objective = Eigen::VectorXd::Zero(n);
  objective.tail(bounds).setConstant(-1.0);
  program.SetObjective(std::move(objective));

  const lp::Solution sol = lp::Solve(program);
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kNumericalFailure, "observer-vector program failed");
  }
  Eigen::VectorXd v = sol.x.head(s) - sol.x.segment(s, s);
  v += stacked.completeOrthogonalDecomposition().solve(target - stacked * v);

  PairObservers out;
  out.pair = pair;
  out.residual = (stacked * v - target).cwiseAbs().maxCoeff();
  col = 0;
  for (Action k : actions) {
    const int sk = game.num_symbols(k);
    out.observers.push_back({k, v.segment(col, sk)});
    col += sk;
  }
  return out;
}

}  // namespace

ObserverPlan BuildObserverPlan(const Game& game, const CellStructure& cells,
                               const Tolerances& tol) {
  std::vector<PairObservers> pairs;
  for (const ActionPair& pair : cells.neighbors) {
    const Eigen::VectorXd target =
        game.LossVector(pair.first) - game.LossVector(pair.second);
    std::vector<Action> observers = cells.plus_sets.at(pair);
    std::sort(observers.begin(), observers.end());
    double residual = SpanResidual(StackedSignalTranspose(game, observers), target);
    for (Action k = 0; k < game.num_actions() && residual > tol.span; ++k) {
      if (std::find(observers.begin(), observers.end(), k) != observers.end()) continue;
      observers.push_back(k);
      residual = SpanResidual(StackedSignalTranspose(game, observers), target);
    }
    if (residual > tol.span) {
      throw Error(ErrorCode::kNotGloballyObservable,
                  "loss difference of pair {" + std::to_string(pair.first + 1) + "," +
                      std::to_string(pair.second + 1) +
                      "} is not spanned by all signal matrices");
    }
    std::sort(observers.begin(), observers.end());
    pairs.push_back(SolveObserverVectors(game, pair, observers, target));
  }
  return ObserverPlan(game.num_actions(), std::move(pairs));
}

}  // namespace pmlab
