#ifndef PMLAB_GEOMETRY_H_
#define PMLAB_GEOMETRY_H_

#include <compare>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "pmlab/game.h"

namespace pmlab {

struct Tolerances {
  // A strict system counts as satisfiable iff its max slack exceeds this.
  double strict = 1e-9;
  // Residual bound for "vector lies in a column span".
  double span = 1e-9;
};

struct LinearConstraint {
  Eigen::VectorXd coeffs;
  double rhs = 0.0;
};

// Constraints on p ∈ Δ_M. The simplex constraints (p >= 0, Σp = 1) are
// implicit and always present.
class LinearConstraintSystem {
 public:
  explicit LinearConstraintSystem(int dimension) : dimension_(dimension) {}

  int dimension() const { return dimension_; }

  // a·p = b
  void AddEquality(Eigen::VectorXd a, double b);
  // a·p >= b
  void AddWeak(Eigen::VectorXd a, double b);
  // a·p > b
  void AddStrict(Eigen::VectorXd a, double b);

  const std::vector<LinearConstraint>& equalities() const { return equalities_; }
  const std::vector<LinearConstraint>& weak() const { return weak_; }
  const std::vector<LinearConstraint>& strict() const { return strict_; }

 private:
  void CheckLength(const Eigen::VectorXd& a) const;

  int dimension_;
  std::vector<LinearConstraint> equalities_;
  std::vector<LinearConstraint> weak_;
  std::vector<LinearConstraint> strict_;
};

struct SlackPoint {
  Eigen::VectorXd point;
  // Largest s with a·p >= b + s for every strict row (rows scaled to unit
  // max-coefficient), capped at 1. Equals 1 when there are no strict rows.
  double slack = 0.0;
};

// nullopt iff the equalities and weak inequalities have no common point in
// the simplex.
std::optional<SlackPoint> MaxSlackPoint(const LinearConstraintSystem& system);

bool StrictlySatisfiable(const LinearConstraintSystem& system,
                         double tol_strict = Tolerances{}.strict);

// Total-variation distance from q to the closed polytope described by the
// system (strict rows are read as weak, i.e. the closure). nullopt if empty.
struct DistanceResult {
  double distance = 0.0;
  Eigen::VectorXd nearest;
};
std::optional<DistanceResult> TotalVariationDistance(
    const LinearConstraintSystem& system, const Eigen::VectorXd& q);

// C_i: (ℓ_k - ℓ_i)·p >= 0 for every k != i.
LinearConstraintSystem CellConstraints(const Game& game, Action i);

// C_i ∩ C_j: the cell of i plus (ℓ_i - ℓ_j)·p = 0.
LinearConstraintSystem BoundaryConstraints(const Game& game, Action i, Action j);

// Unordered action pair stored with first < second.
struct ActionPair {
  Action first = 0;
  Action second = 0;

  static ActionPair Of(Action a, Action b) {
    return a < b ? ActionPair{a, b} : ActionPair{b, a};
  }
  bool Contains(Action k) const { return first == k || second == k; }
  auto operator<=>(const ActionPair&) const = default;
};

enum class ActionClass { kPareto, kDegenerate, kDominated };
std::string_view ActionClassName(ActionClass c);

struct CellStructure {
  std::vector<ActionClass> action_class;
  std::vector<Action> pareto;
  std::vector<Action> dominated;
  std::vector<Action> degenerate;
  // Sorted.
  std::vector<ActionPair> neighbors;
  std::map<ActionPair, std::vector<Action>> plus_sets;
  // Sorted; subset of neighbors.
  std::vector<ActionPair> locally_observable_pairs;

  bool IsNeighbor(ActionPair pair) const;
  bool IsLocallyObservable(ActionPair pair) const;
};

// Fills action_class, pareto, dominated, degenerate.
CellStructure ClassifyActions(const Game& game, const Tolerances& tol = {});

// N⁺_{i,j} if i and j are neighbors, nullopt otherwise. Both must be Pareto.
std::optional<std::vector<Action>> NeighborhoodActionSet(const Game& game, Action i,
                                                         Action j,
                                                         const Tolerances& tol = {});

// Fills neighbors and plus_sets.
CellStructure NeighborStructure(const Game& game, CellStructure cells,
                                const Tolerances& tol = {});

// Fills locally_observable_pairs.
CellStructure LocalObservability(const Game& game, CellStructure cells,
                                 const Tolerances& tol = {});

// All three passes.
CellStructure AnalyzeCells(const Game& game, const Tolerances& tol = {});

// Columns are the columns of S_k^T for k in `actions`, in that order.
Eigen::MatrixXd StackedSignalTranspose(const Game& game,
                                       const std::vector<Action>& actions);

// Least-squares residual (infinity norm) of target against span(columns).
double SpanResidual(const Eigen::MatrixXd& columns, const Eigen::VectorXd& target);

bool IsGloballyObservable(const Game& game, const Tolerances& tol = {});

// Some action has ℓ_i <= ℓ_k componentwise for every k, i.e. C_i = Δ_M.
bool IsTrivial(const Game& game);

enum class GameClass { kTrivial, kEasy, kHard, kHopeless };
std::string_view GameClassName(GameClass c);

GameClass ClassifyGame(const Game& game, const CellStructure& cells,
                       const Tolerances& tol = {});
GameClass ClassifyGame(const Game& game, const Tolerances& tol = {});

// argmin_i ℓ_i·p, lowest index on exact ties.
Action OptimalAction(const Game& game, const Eigen::VectorXd& p);

}  // namespace pmlab

#endif  // PMLAB_GEOMETRY_H_
