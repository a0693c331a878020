#include "pmlab/geometry.h"

#include <gtest/gtest.h>

#include <numeric>

#include "grid_oracle.h"
#include "pmlab/analysis.h"
#include "pmlab/catalog.h"
#include "pmlab/error.h"

namespace pmlab {
namespace {

Game Make(std::initializer_list<std::initializer_list<double>> rows, const char* token = "x") {
  const int n = static_cast<int>(rows.size());
  const int m = static_cast<int>(rows.begin()->size());
  Eigen::MatrixXd loss(n, m);
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (double v : r) loss(i, j++) = v;
    ++i;
  }
  return Game("g", loss, FeedbackMatrix(n, std::vector<std::string>(m, token)));
}

Eigen::VectorXd Draw(Rng& rng, int m) {
  Eigen::VectorXd p(m);
  for (int j = 0; j < m; ++j) p(j) = -std::log1p(-UniformDouble(rng));
  return p / p.sum();
}

TEST(ConstraintSystem, RejectsWrongLength) {
  LinearConstraintSystem s(3);
  EXPECT_THROW(s.AddWeak(Eigen::Vector2d(1, 0), 0), Error);
  EXPECT_THROW(s.AddStrict(Eigen::Vector4d(1, 0, 0, 0), 0), Error);
  EXPECT_THROW(s.AddEquality(Eigen::Vector2d(1, 0), 0), Error);
}

TEST(MaxSlack, SimplexOnly) {
  const auto r = MaxSlackPoint(LinearConstraintSystem(3));
  ASSERT_TRUE(r);
  EXPECT_NEAR(r->point.sum(), 1.0, 1e-12);
  EXPECT_GE(r->point.minCoeff(), 0.0);
  EXPECT_TRUE(StrictlySatisfiable(LinearConstraintSystem(3)));
}

TEST(MaxSlack, StrictRowsAndEqualities) {
  LinearConstraintSystem s(2);
  s.AddStrict(Eigen::Vector2d(1, 0), 0.5);  // p1 > 0.5
  auto r = MaxSlackPoint(s);
  ASSERT_TRUE(r);
  // Best is p = (1, 0): slack 0.5.
  EXPECT_NEAR(r->slack, 0.5, 1e-9);
  EXPECT_TRUE(StrictlySatisfiable(s));

  LinearConstraintSystem t(2);
  t.AddStrict(Eigen::Vector2d(1, 0), 1.0);  // p1 > 1
  EXPECT_FALSE(StrictlySatisfiable(t));

  LinearConstraintSystem u(2);
  u.AddEquality(Eigen::Vector2d(1, 0), 0.5);
  u.AddStrict(Eigen::Vector2d(1, -1), 0.0);  // p1 > p2 contradicts p1 = 0.5
  EXPECT_FALSE(StrictlySatisfiable(u));

  LinearConstraintSystem v(2);
  v.AddEquality(Eigen::Vector2d(1, 0), 2.0);
  EXPECT_FALSE(MaxSlackPoint(v).has_value());
}

TEST(TotalVariation, HandComputed) {
  LinearConstraintSystem s(3);
  s.AddWeak(Eigen::Vector3d(1, 0, 0), 0.6);
  const auto d = TotalVariationDistance(s, Eigen::Vector3d(0.2, 0.4, 0.4));
  ASSERT_TRUE(d);
  EXPECT_NEAR(d->distance, 0.4, 1e-9);
  EXPECT_NEAR(d->nearest(0), 0.6, 1e-9);
  const auto inside = TotalVariationDistance(s, Eigen::Vector3d(0.7, 0.2, 0.1));
  ASSERT_TRUE(inside);
  EXPECT_NEAR(inside->distance, 0.0, 1e-12);
  LinearConstraintSystem empty(3);
  empty.AddWeak(Eigen::Vector3d(1, 0, 0), 2.0);
  EXPECT_FALSE(TotalVariationDistance(empty, Eigen::Vector3d(0.2, 0.4, 0.4)).has_value());
}

TEST(TotalVariation, MatchesGridSearch) {
  Rng rng(11);
  constexpr int kRes = 400;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Vector3d a(UniformDouble(rng) * 2 - 1, UniformDouble(rng) * 2 - 1,
                      UniformDouble(rng) * 2 - 1);
    const double b = (UniformDouble(rng) - 0.5) * 0.5;
    LinearConstraintSystem s(3);
    s.AddWeak(a, b);
    const Eigen::VectorXd q = Draw(rng, 3);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kRes; ++i) {
      for (int j = 0; i + j <= kRes; ++j) {
        const Eigen::Vector3d p(double(i) / kRes, double(j) / kRes, double(kRes - i - j) / kRes);
        if (a.dot(p) >= b) best = std::min(best, 0.5 * (p - q).cwiseAbs().sum());
      }
    }
    const auto d = TotalVariationDistance(s, q);
    if (!std::isfinite(best)) {
      // Feasible set thinner than the grid, or empty.
      continue;
    }
    ASSERT_TRUE(d);
    EXPECT_LE(d->distance, best + 1e-9);
    EXPECT_GE(d->distance, best - 2.0 / kRes);
    EXPECT_GE(a.dot(d->nearest), b - 1e-9);
  }
}

TEST(Cells, EasyGame) {
  const Game g = EasyGame();
  const CellStructure c = AnalyzeCells(g);
  EXPECT_EQ(c.pareto, (std::vector<Action>{0, 1, 2}));
  EXPECT_TRUE(c.dominated.empty());
  EXPECT_TRUE(c.degenerate.empty());
  ASSERT_EQ(c.neighbors.size(), 3u);
  for (const ActionPair& p : c.neighbors) {
    EXPECT_EQ(c.plus_sets.at(p), (std::vector<Action>{p.first, p.second}));
  }
  EXPECT_EQ(c.locally_observable_pairs, c.neighbors);
  EXPECT_EQ(ClassifyGame(g, c), GameClass::kEasy);
}

TEST(Cells, DominatedAction) {
  const Game g = Make({{0, 1}, {1, 0}, {1, 1}});
  const CellStructure c = AnalyzeCells(g);
  EXPECT_EQ(c.pareto, (std::vector<Action>{0, 1}));
  EXPECT_EQ(c.dominated, (std::vector<Action>{2}));
  EXPECT_EQ(c.action_class[2], ActionClass::kDominated);
  EXPECT_EQ(c.neighbors, (std::vector<ActionPair>{{0, 1}}));
  EXPECT_EQ(c.plus_sets.at({0, 1}), (std::vector<Action>{0, 1}));
}

TEST(Cells, DegenerateActionJoinsNeighborhood) {
  // C_3 is the single point (1/2, 1/2), exactly the boundary of C_1 and C_2.
  const Game g = Make({{0, 1}, {1, 0}, {0.5, 0.5}});
  const CellStructure c = AnalyzeCells(g);
  EXPECT_EQ(c.pareto, (std::vector<Action>{0, 1}));
  EXPECT_EQ(c.degenerate, (std::vector<Action>{2}));
  ASSERT_EQ(c.neighbors, (std::vector<ActionPair>{{0, 1}}));
  EXPECT_EQ(c.plus_sets.at({0, 1}), (std::vector<Action>{0, 1, 2}));
}

TEST(Cells, CornerContactIsNotANeighbor) {
  // Cells of actions 1 and 3 touch only at (1/2, 0, 1/2); action 2's cell
  // sits between them everywhere else.
  const Game g = Make({{0, 2, 2}, {1, 0, 1}, {2, 2, 0}});
  const CellStructure c = AnalyzeCells(g);
  const testing::GridStructure oracle = testing::GridOracle(g.loss());
  std::vector<std::pair<int, int>> lp;
  for (const ActionPair& p : c.neighbors) lp.emplace_back(p.first, p.second);
  EXPECT_EQ(lp, oracle.neighbors);
  EXPECT_FALSE(NeighborhoodActionSet(g, 0, 2).has_value());
  EXPECT_EQ(c.neighbors, (std::vector<ActionPair>{{0, 1}, {1, 2}}));
}

TEST(Classes, TrivialBeatsHopeless) {
  // Action 1 is best everywhere; no feedback at all.
  const Game g = Make({{0, 0, 0}, {1, 0, 2}});
  EXPECT_TRUE(IsTrivial(g));
  EXPECT_FALSE(IsGloballyObservable(g));
  EXPECT_EQ(ClassifyGame(g), GameClass::kTrivial);
}

TEST(Classes, Hopeless) {
  const Game g = Make({{0, 1}, {1, 0}});
  EXPECT_FALSE(IsTrivial(g));
  EXPECT_EQ(ClassifyGame(g), GameClass::kHopeless);
  const GameAnalysis a = AnalyzeGame(g);
  EXPECT_FALSE(a.globally_observable);
  EXPECT_FALSE(a.plan.has_value());
}

TEST(Classes, FullInformationIsEasy) {
  Eigen::MatrixXd loss(2, 2);
  loss << 0, 1, 1, 0;
  const Game g("full", loss, {{"a", "b"}, {"a", "b"}});
  EXPECT_EQ(ClassifyGame(g), GameClass::kEasy);
}

TEST(Geometry, OptimalActionTiesToLowestIndex) {
  const Game g = EasyGame();
  EXPECT_EQ(OptimalAction(g, Eigen::Vector3d(1.0 / 3, 1.0 / 3, 1.0 / 3)), 0);
  EXPECT_EQ(OptimalAction(g, Eigen::Vector3d(0.2, 0.3, 0.5)), 0);
  EXPECT_EQ(OptimalAction(g, Eigen::Vector3d(0.8, 0.1, 0.1)), 1);
}

TEST(Geometry, SpanResidual) {
  Eigen::MatrixXd cols(3, 1);
  cols << 1, 1, 1;
  EXPECT_LT(SpanResidual(cols, Eigen::Vector3d(2, 2, 2)), 1e-12);
  EXPECT_NEAR(SpanResidual(cols, Eigen::Vector3d(1, 0, -1)), 1.0, 1e-12);
}

// Rank test: target in span(A) iff rank [A | target] == rank A.
bool InSpanByRank(const Eigen::MatrixXd& a, const Eigen::VectorXd& target) {
  Eigen::MatrixXd aug(a.rows(), a.cols() + 1);
  aug << a, target;
  Eigen::FullPivLU<Eigen::MatrixXd> lu_a(a), lu_aug(aug);
  lu_a.setThreshold(1e-10);
  lu_aug.setThreshold(1e-10);
  return lu_a.rank() == lu_aug.rank();
}

TEST(GeometryProperty, RandomGamesMatchGridOracle) {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const Game g = testing::RandomSmallGame(seed);
    const CellStructure c = AnalyzeCells(g);
    const testing::GridStructure oracle = testing::GridOracle(g.loss());
    std::vector<int> pareto(c.pareto.begin(), c.pareto.end());
    std::vector<std::pair<int, int>> neighbors;
    for (const ActionPair& p : c.neighbors) neighbors.emplace_back(p.first, p.second);
    EXPECT_EQ(pareto, oracle.pareto) << g.loss();
    EXPECT_EQ(neighbors, oracle.neighbors) << g.loss();
  }
}

TEST(GeometryProperty, SampledPointsLieInParetoCells) {
  Rng rng(5);
  for (std::uint64_t seed = 200; seed < 240; ++seed) {
    const Game g = testing::RandomSmallGame(seed);
    const CellStructure c = AnalyzeCells(g);
    for (int s = 0; s < 200; ++s) {
      const Eigen::VectorXd p = Draw(rng, 3);
      const Action i = OptimalAction(g, p);
      EXPECT_EQ(c.action_class[i], ActionClass::kPareto);
      const LinearConstraintSystem cell = CellConstraints(g, i);
      for (const auto& w : cell.weak()) EXPECT_GE(w.coeffs.dot(p), w.rhs - 1e-12);
    }
  }
}

TEST(GeometryProperty, PlusSetsContainPairAndAreSymmetric) {
  for (std::uint64_t seed = 300; seed < 330; ++seed) {
    const Game g = testing::RandomSmallGame(seed);
    const CellStructure c = AnalyzeCells(g);
    for (const ActionPair& p : c.neighbors) {
      const auto& plus = c.plus_sets.at(p);
      EXPECT_TRUE(std::is_sorted(plus.begin(), plus.end()));
      EXPECT_NE(std::find(plus.begin(), plus.end(), p.first), plus.end());
      EXPECT_NE(std::find(plus.begin(), plus.end(), p.second), plus.end());
      const auto reversed = NeighborhoodActionSet(g, p.second, p.first);
      ASSERT_TRUE(reversed);
      EXPECT_EQ(*reversed, plus);
      // Every member's loss ties with the pair on the whole boundary: check
      // at the max-slack point of the boundary.
      const auto point = MaxSlackPoint(BoundaryConstraints(g, p.first, p.second));
      ASSERT_TRUE(point);
      for (Action k : plus) {
        EXPECT_NEAR(g.ExpectedLoss(k, point->point), g.ExpectedLoss(p.first, point->point),
                    1e-9);
      }
    }
  }
}

TEST(GeometryProperty, LocalObservabilityMatchesRankTest) {
  for (std::uint64_t seed = 400; seed < 460; ++seed) {
    const Game g = testing::RandomSmallGame(seed);
    const CellStructure c = AnalyzeCells(g);
    for (const ActionPair& p : c.neighbors) {
      const Eigen::VectorXd diff = g.LossVector(p.first) - g.LossVector(p.second);
      const bool local = InSpanByRank(StackedSignalTranspose(g, c.plus_sets.at(p)), diff);
      EXPECT_EQ(c.IsLocallyObservable(p), local);
    }
    std::vector<Action> all(g.num_actions());
    std::iota(all.begin(), all.end(), 0);
    bool global = true;
    for (Action i = 0; i < g.num_actions(); ++i) {
      for (Action j = i + 1; j < g.num_actions(); ++j) {
        global = global &&
                 InSpanByRank(StackedSignalTranspose(g, all), g.LossVector(i) - g.LossVector(j));
      }
    }
    EXPECT_EQ(IsGloballyObservable(g), global);
  }
}

}  // namespace
}  // namespace pmlab
