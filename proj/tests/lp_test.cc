#include "pmlab/lp.h"

#include <gtest/gtest.h>

#include "pmlab/random.h"

namespace pmlab::lp {
namespace {

Eigen::VectorXd V(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<int>(v.size()));
  int k = 0;
  for (double x : v) out(k++) = x;
  return out;
}

TEST(Lp, TextbookMaximum) {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36.
  LinearProgram lp(2);
  lp.SetObjective(V({3, 5}));
  lp.AddLessEqual(V({1, 0}), 4);
  lp.AddLessEqual(V({0, 2}), 12);
  lp.AddLessEqual(V({3, 2}), 18);
  const Solution s = Solve(lp);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_NEAR(s.objective, 36, 1e-9);
  EXPECT_NEAR(s.x(0), 2, 1e-9);
  EXPECT_NEAR(s.x(1), 6, 1e-9);
}

TEST(Lp, NegativeRightHandSideNeedsPhaseOne) {
  // min x + y s.t. x + y >= 2, x - y = 1 -> (1.5, 0.5).
  LinearProgram lp(2);
  lp.SetObjective(V({-1, -1}));
  lp.AddLessEqual(V({-1, -1}), -2);
  lp.AddEqual(V({1, -1}), 1);
  const Solution s = Solve(lp);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_NEAR(s.objective, -2, 1e-9);
  EXPECT_NEAR(s.x(0), 1.5, 1e-9);
  EXPECT_NEAR(s.x(1), 0.5, 1e-9);
}

TEST(Lp, Infeasible) {
  LinearProgram lp(1);
  lp.AddLessEqual(V({1}), 1);
  lp.AddLessEqual(V({-1}), -2);
  EXPECT_EQ(Solve(lp).status, Status::kInfeasible);
}

TEST(Lp, Unbounded) {
  LinearProgram lp(2);
  lp.SetObjective(V({1, 0}));
  lp.AddLessEqual(V({-1, 1}), 1);
  EXPECT_EQ(Solve(lp).status, Status::kUnbounded);
}

TEST(Lp, NoConstraints) {
  LinearProgram lp(2);
  lp.SetObjective(V({-1, -2}));
  const Solution s = Solve(lp);
  EXPECT_EQ(s.status, Status::kOptimal);
  EXPECT_EQ(s.objective, 0.0);
  lp.SetObjective(V({0, 1}));
  EXPECT_EQ(Solve(lp).status, Status::kUnbounded);
}

TEST(Lp, BealeCyclingExample) {
  // Cycles under textbook Dantzig pricing without anti-cycling care.
  LinearProgram lp(4);
  lp.SetObjective(V({0.75, -20, 0.5, -6}));
  lp.AddLessEqual(V({0.25, -8, -1, 9}), 0);
  lp.AddLessEqual(V({0.5, -12, -0.5, 3}), 0);
  lp.AddLessEqual(V({0, 0, 1, 0}), 1);
  const Solution s = Solve(lp);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_NEAR(s.objective, 1.25, 1e-9);
}

// Brute force over all vertices of {x >= 0, A x <= b} in two dimensions.
double VertexOracle(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::Vector2d& c,
                    bool* feasible) {
  std::vector<std::pair<Eigen::RowVector2d, double>> rows;
  for (int i = 0; i < a.rows(); ++i) rows.emplace_back(a.row(i), b(i));
  rows.emplace_back(Eigen::RowVector2d(-1, 0), 0);
  rows.emplace_back(Eigen::RowVector2d(0, -1), 0);
  double best = -std::numeric_limits<double>::infinity();
  *feasible = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      Eigen::Matrix2d m;
      m << rows[i].first, rows[j].first;
      if (std::abs(m.determinant()) < 1e-12) continue;
      const Eigen::Vector2d x = m.inverse() * (Eigen::Vector2d(rows[i].second, rows[j].second));
      bool ok = true;
      for (const auto& [r, rhs] : rows) ok = ok && r.dot(x) <= rhs + 1e-9;
      if (!ok) continue;
      *feasible = true;
      best = std::max(best, c.dot(x));
    }
  }
  return best;
}

TEST(Lp, RandomBoundedProgramsMatchVertexEnumeration) {
  Rng rng(3);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + UniformInt(rng, 4);
    Eigen::MatrixXd a(m + 1, 2);
    Eigen::VectorXd b(m + 1);
    for (int i = 0; i < m; ++i) {
      a(i, 0) = UniformInt(rng, 9) - 4;
      a(i, 1) = UniformInt(rng, 9) - 4;
      b(i) = UniformInt(rng, 11) - 3;
    }
    // Box row keeps everything bounded.
    a.row(m) << 1, 1;
    b(m) = 10;
    const Eigen::Vector2d c(UniformInt(rng, 7) - 3, UniformInt(rng, 7) - 3);
    bool feasible = false;
    const double expected = VertexOracle(a, b, c, &feasible);
    LinearProgram lp(2);
    lp.SetObjective(c);
    for (int i = 0; i <= m; ++i) lp.AddLessEqual(a.row(i).transpose(), b(i));
    const Solution s = Solve(lp);
    if (!feasible) {
      EXPECT_EQ(s.status, Status::kInfeasible) << "trial " << trial;
      continue;
    }
    ASSERT_EQ(s.status, Status::kOptimal) << "trial " << trial;
    EXPECT_NEAR(s.objective, expected, 1e-7) << "trial " << trial;
    EXPECT_NEAR(c.dot(s.x), s.objective, 1e-7);
    EXPECT_TRUE(((a * s.x - b).array() <= 1e-7).all());
    EXPECT_GE(s.x.minCoeff(), -1e-9);
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

}  // namespace
}  // namespace pmlab::lp
