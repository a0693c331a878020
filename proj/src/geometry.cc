#include "pmlab/geometry.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "pmlab/error.h"
#include "pmlab/lp.h"

namespace pmlab {

void LinearConstraintSystem::CheckLength(const Eigen::VectorXd& a) const {
  if (a.size() != dimension_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "constraint of length " + std::to_string(a.size()) +
                    " in a system of dimension " + std::to_string(dimension_));
  }
}

void LinearConstraintSystem::AddEquality(Eigen::VectorXd a, double b) {
  CheckLength(a);
  equalities_.push_back({std::move(a), b});
}

void LinearConstraintSystem::AddWeak(Eigen::VectorXd a, double b) {
  CheckLength(a);
  weak_.push_back({std::move(a), b});
}

void LinearConstraintSystem::AddStrict(Eigen::VectorXd a, double b) {
  CheckLength(a);
  strict_.push_back({std::move(a), b});
}

namespace {

void AddSimplexAndSystemRows(const LinearConstraintSystem& system,
                             lp::LinearProgram& program) {
  const int m = system.dimension();
  const int n = program.num_vars();
  auto widen = [n, m](const Eigen::VectorXd& a) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(n);
    row.head(m) = a;
    return row;
  };
  program.AddEqual(widen(Eigen::VectorXd::Ones(m)), 1.0);
  for (const auto& c : system.equalities()) program.AddEqual(widen(c.coeffs), c.rhs);
  for (const auto& c : system.weak()) program.AddLessEqual(widen(-c.coeffs), -c.rhs);
}

Eigen::VectorXd CleanPoint(Eigen::VectorXd p) {
  p = p.cwiseMax(0.0);
  const double total = p.sum();
  if (total > 0.0) p /= total;
  return p;
}

}  // namespace

std::optional<SlackPoint> MaxSlackPoint(const LinearConstraintSystem& system) {
  const int m = system.dimension();
  // Variables: p (m entries) and u >= 0 with s = u - shift. The shift is
  // larger than any achievable violation so u >= 0 never binds.
  std::vector<LinearConstraint> scaled;
  double shift = 2.0;
  for (const auto& c : system.strict()) {
    const double scale = c.coeffs.cwiseAbs().maxCoeff();
    LinearConstraint s = c;
    if (scale > 0.0) {
      s.coeffs /= scale;
      s.rhs /= scale;
    }
    shift = std::max(shift, 2.0 + std::abs(s.rhs));
    scaled.push_back(std::move(s));
  }
  lp::LinearProgram program(m + 1);
  AddSimplexAndSystemRows(system, program);
  for (const auto& c : scaled) {
    Eigen::VectorXd row(m + 1);
    row.head(m) = -c.coeffs;
    row(m) = 1.0;
    program.AddLessEqual(std::move(row), shift - c.rhs);
  }
  Eigen::VectorXd cap = Eigen::VectorXd::Zero(m + 1);
  cap(m) = 1.0;
  program.AddLessEqual(cap, shift + 1.0);
  program.SetObjective(cap);

  const lp::Solution sol = lp::Solve(program);
  if (sol.status == lp::Status::kInfeasible) return std::nullopt;
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kNumericalFailure, "max-slack program is unbounded");
  }
  SlackPoint out;
  out.point = CleanPoint(sol.x.head(m));
  out.slack = sol.x(m) - shift;
  return out;
}

bool StrictlySatisfiable(const LinearConstraintSystem& system, double tol_strict) {
  const auto result = MaxSlackPoint(system);
  return result.has_value() && result->slack > tol_strict;
}

std::optional<DistanceResult> TotalVariationDistance(
    const LinearConstraintSystem& system, const Eigen::VectorXd& q) {
  const int m = system.dimension();
  if (q.size() != m) {
    throw Error(ErrorCode::kDimensionMismatch, "query point has wrong length");
  }
  // Variables: p, d+, d- with p - d+ + d- = q.
  lp::LinearProgram program(3 * m);
  AddSimplexAndSystemRows(system, program);
  for (const auto& c : system.strict()) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(3 * m);
    row.head(m) = -c.coeffs;
    program.AddLessEqual(std::move(row), -c.rhs);
  }
  for (int l = 0; l < m; ++l) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(3 * m);
    row(l) = 1.0;
    row(m + l) = -1.0;
    row(2 * m + l) = 1.0;
    program.AddEqual(std::move(row), q(l));
  }
  Eigen::VectorXd objective = Eigen::VectorXd::Zero(3 * m);
  objective.tail(2 * m).setConstant(-0.5);
  program.SetObjective(std::move(objective));

  const lp::Solution sol = lp::Solve(program);
  if (sol.status == lp::Status::kInfeasible) return std::nullopt;
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kNumericalFailure, "distance program is unbounded");
  }
  DistanceResult out;
  out.nearest = CleanPoint(sol.x.head(m));
  out.distance = 0.5 * (out.nearest - q).cwiseAbs().sum();
  return out;
}

LinearConstraintSystem CellConstraints(const Game& game, Action i) {
  LinearConstraintSystem system(game.num_outcomes());
  const Eigen::VectorXd li = game.LossVector(i);
  for (Action k = 0; k < game.num_actions(); ++k) {
    if (k != i) system.AddWeak(game.LossVector(k) - li, 0.0);
  }
  return system;
}

LinearConstraintSystem BoundaryConstraints(const Game& game, Action i, Action j) {
  LinearConstraintSystem system = CellConstraints(game, i);
  system.AddEquality(game.LossVector(i) - game.LossVector(j), 0.0);
  return system;
}

std::string_view ActionClassName(ActionClass c) {
  switch (c) {
    case ActionClass::kPareto: return "pareto";
    case ActionClass::kDegenerate: return "degenerate";
    case ActionClass::kDominated: return "dominated";
  }
  return "unknown";
}

std::string_view GameClassName(GameClass c) {
  switch (c) {
    case GameClass::kTrivial: return "trivial";
    case GameClass::kEasy: return "easy";
    case GameClass::kHard: return "hard";
    case GameClass::kHopeless: return "hopeless";
  }
  return "unknown";
}

bool CellStructure::IsNeighbor(ActionPair pair) const {
  return std::binary_search(neighbors.begin(), neighbors.end(), pair);
}

bool CellStructure::IsLocallyObservable(ActionPair pair) const {
  return std::binary_search(locally_observable_pairs.begin(),
                            locally_observable_pairs.end(), pair);
}

namespace {

// Is `region` (closed, possibly with strict rows read as weak) inside C_k?
// C_k is violated somewhere in the region iff for some m the strict row
// (ℓ_k - ℓ_m)·p > 0 is satisfiable together with it.
bool RegionInsideCell(const Game& game, const LinearConstraintSystem& region,
                      Action k, const Tolerances& tol) {
  const Eigen::VectorXd lk = game.LossVector(k);
  for (Action m = 0; m < game.num_actions(); ++m) {
    if (m == k) continue;
    LinearConstraintSystem probe = region;
    probe.AddStrict(lk - game.LossVector(m), 0.0);
    if (StrictlySatisfiable(probe, tol.strict)) return false;
  }
  return true;
}

bool FullDimensionalCell(const Game& game, Action i, const Tolerances& tol) {
  LinearConstraintSystem system(game.num_outcomes());
  const Eigen::VectorXd li = game.LossVector(i);
  for (Action k = 0; k < game.num_actions(); ++k) {
    if (k != i) system.AddStrict(game.LossVector(k) - li, 0.0);
  }
  return StrictlySatisfiable(system, tol.strict);
}

// On {p : (ℓ_i - ℓ_j)·p = 0, Σp = 1} the function (ℓ_k - ℓ_i)·p is
// identically zero iff ℓ_k - ℓ_i = a (ℓ_i - ℓ_j) + b 1 with b = 0.
bool VanishesOnBoundary(const Eigen::VectorXd& diff_ki, const Eigen::VectorXd& diff_ij,
                        const Tolerances& tol) {
  Eigen::MatrixXd basis(diff_ki.size(), 2);
  basis.col(0) = diff_ij;
  basis.col(1).setOnes();
  const Eigen::VectorXd coef = basis.completeOrthogonalDecomposition().solve(diff_ki);
  const double residual = (basis * coef - diff_ki).cwiseAbs().maxCoeff();
  return residual <= tol.span && std::abs(coef(1)) <= tol.span;
}

}  // namespace

CellStructure ClassifyActions(const Game& game, const Tolerances& tol) {
  const int n = game.num_actions();
  CellStructure cells;
  cells.action_class.assign(n, ActionClass::kPareto);
  std::vector<bool> full(n, false);
  for (Action i = 0; i < n; ++i) {
    if (!MaxSlackPoint(CellConstraints(game, i)).has_value()) {
      cells.action_class[i] = ActionClass::kDominated;
      continue;
    }
    full[i] = FullDimensionalCell(game, i, tol);
    if (!full[i]) cells.action_class[i] = ActionClass::kDegenerate;
  }
  // A full-dimensional cell strictly inside another cell also makes the
  // action degenerate. With distinct loss rows this cannot happen, but the
  // check is cheap and keeps the classification faithful to its definition.
  for (Action i = 0; i < n; ++i) {
    if (!full[i]) continue;
    const LinearConstraintSystem ci = CellConstraints(game, i);
    for (Action other = 0; other < n; ++other) {
      if (other == i || cells.action_class[other] == ActionClass::kDominated) continue;
      if (RegionInsideCell(game, ci, other, tol) &&
          !RegionInsideCell(game, CellConstraints(game, other), i, tol)) {
        cells.action_class[i] = ActionClass::kDegenerate;
        break;
      }
    }
  }
  for (Action i = 0; i < n; ++i) {
    switch (cells.action_class[i]) {
      case ActionClass::kPareto: cells.pareto.push_back(i); break;
      case ActionClass::kDegenerate: cells.degenerate.push_back(i); break;
      case ActionClass::kDominated: cells.dominated.push_back(i); break;
    }
  }
  return cells;
}

std::optional<std::vector<Action>> NeighborhoodActionSet(const Game& game, Action i,
                                                         Action j,
                                                         const Tolerances& tol) {
  const Eigen::VectorXd li = game.LossVector(i);
  const Eigen::VectorXd diff_ij = li - game.LossVector(j);

  // (M-2)-dimensionality: a boundary point where every action whose
  // constraint does not vanish on the hyperplane is strictly worse.
  LinearConstraintSystem interior(game.num_outcomes());
  interior.AddEquality(diff_ij, 0.0);
  for (Action k = 0; k < game.num_actions(); ++k) {
    if (k == i || k == j) continue;
    Eigen::VectorXd diff_ki = game.LossVector(k) - li;
    if (VanishesOnBoundary(diff_ki, diff_ij, tol)) {
      interior.AddWeak(std::move(diff_ki), 0.0);
    } else {
      interior.AddStrict(std::move(diff_ki), 0.0);
    }
  }
  if (!StrictlySatisfiable(interior, tol.strict)) return std::nullopt;

  const LinearConstraintSystem boundary = BoundaryConstraints(game, i, j);
  std::vector<Action> plus;
  for (Action k = 0; k < game.num_actions(); ++k) {
    if (k == i || k == j || RegionInsideCell(game, boundary, k, tol)) {
      plus.push_back(k);
    }
  }
  return plus;
}

CellStructure NeighborStructure(const Game& game, CellStructure cells,
                                const Tolerances& tol) {
  cells.neighbors.clear();
  cells.plus_sets.clear();
  for (std::size_t a = 0; a < cells.pareto.size(); ++a) {
    for (std::size_t b = a + 1; b < cells.pareto.size(); ++b) {
      const ActionPair pair = ActionPair::Of(cells.pareto[a], cells.pareto[b]);
      auto plus = NeighborhoodActionSet(game, pair.first, pair.second, tol);
      if (!plus) continue;
      cells.neighbors.push_back(pair);
      cells.plus_sets.emplace(pair, std::move(*plus));
    }
  }
  std::sort(cells.neighbors.begin(), cells.neighbors.end());
  return cells;
}

Eigen::MatrixXd StackedSignalTranspose(const Game& game,
                                       const std::vector<Action>& actions) {
  int cols = 0;
  for (Action k : actions) cols += game.num_symbols(k);
  Eigen::MatrixXd stacked(game.num_outcomes(), cols);
  int at = 0;
  for (Action k : actions) {
    const int s = game.num_symbols(k);
    stacked.middleCols(at, s) = game.signal_matrix(k).entries.transpose();
    at += s;
  }
  return stacked;
}

double SpanResidual(const Eigen::MatrixXd& columns, const Eigen::VectorXd& target) {
  if (columns.cols() == 0) return target.cwiseAbs().maxCoeff();
  const Eigen::VectorXd coef = columns.completeOrthogonalDecomposition().solve(target);
  return (columns * coef - target).cwiseAbs().maxCoeff();
}

CellStructure LocalObservability(const Game& game, CellStructure cells,
                                 const Tolerances& tol) {
  cells.locally_observable_pairs.clear();
  for (const ActionPair& pair : cells.neighbors) {
    const Eigen::MatrixXd span = StackedSignalTranspose(game, cells.plus_sets.at(pair));
    const Eigen::VectorXd diff = game.LossVector(pair.first) - game.LossVector(pair.second);
    if (SpanResidual(span, diff) <= tol.span) {
      cells.locally_observable_pairs.push_back(pair);
    }
  }
  return cells;
}

CellStructure AnalyzeCells(const Game& game, const Tolerances& tol) {
  return LocalObservability(game, NeighborStructure(game, ClassifyActions(game, tol), tol),
                            tol);
}

bool IsGloballyObservable(const Game& game, const Tolerances& tol) {
  std::vector<Action> all(game.num_actions());
  for (Action k = 0; k < game.num_actions(); ++k) all[k] = k;
  const Eigen::MatrixXd span = StackedSignalTranspose(game, all);
  for (Action i = 0; i < game.num_actions(); ++i) {
    for (Action j = i + 1; j < game.num_actions(); ++j) {
      if (SpanResidual(span, game.LossVector(i) - game.LossVector(j)) > tol.span) {
        return false;
      }
    }
  }
  return true;
}

bool IsTrivial(const Game& game) {
  const Eigen::MatrixXd& loss = game.loss();
  for (Action i = 0; i < game.num_actions(); ++i) {
    bool everywhere = true;
    for (Action k = 0; k < game.num_actions() && everywhere; ++k) {
      everywhere = (loss.row(i).array() <= loss.row(k).array()).all();
    }
    if (everywhere) return true;
  }
  return false;
}

GameClass ClassifyGame(const Game& game, const CellStructure& cells,
                       const Tolerances& tol) {
  if (IsTrivial(game)) return GameClass::kTrivial;
  if (!IsGloballyObservable(game, tol)) return GameClass::kHopeless;
  if (cells.locally_observable_pairs.size() == cells.neighbors.size()) {
    return GameClass::kEasy;
  }
  return GameClass::kHard;
}

GameClass ClassifyGame(const Game& game, const Tolerances& tol) {
  return ClassifyGame(game, AnalyzeCells(game, tol), tol);
}

Action OptimalAction(const Game& game, const Eigen::VectorXd& p) {
  const Eigen::VectorXd expected = game.loss() * p;
  Action best = 0;
  for (Action i = 1; i < game.num_actions(); ++i) {
    if (expected(i) < expected(best)) best = i;
  }
  return best;
}

}  // namespace pmlab
