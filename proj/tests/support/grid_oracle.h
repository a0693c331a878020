// Brute-force cell structure on a regular simplex grid, for M = 3. Shares no
// code with the LP pipeline.
#ifndef PMLAB_TESTS_SUPPORT_GRID_ORACLE_H_
#define PMLAB_TESTS_SUPPORT_GRID_ORACLE_H_

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pmlab/game.h"
#include "pmlab/random.h"

namespace pmlab::testing {

struct GridStructure {
  std::vector<int> pareto;                   // sorted
  std::vector<std::pair<int, int>> neighbors;  // sorted, first < second
};

// Unique minimizer of ℓ_k·p, or -1 on a tie within `tie`.
inline int UniqueOptimum(const Eigen::MatrixXd& loss, const Eigen::Vector3d& p,
                         double tie = 1e-12) {
  const Eigen::VectorXd v = loss * p;
  int best = 0;
  for (int k = 1; k < v.size(); ++k) {
    if (v(k) < v(best)) best = k;
  }
  for (int k = 0; k < v.size(); ++k) {
    if (k != best && v(k) <= v(best) + tie) return -1;
  }
  return best;
}

// An action is Pareto iff it is the unique optimum at some grid point. Two
// actions are neighbors iff at least two distinct points where ℓ_i·p = ℓ_j·p
// is minimal are found on grid edges joining a point owned by i to one owned
// by j; a single crossing is a cell corner, not a shared edge.
inline GridStructure GridOracle(const Eigen::MatrixXd& loss, int resolution = 200) {
  const int n = static_cast<int>(loss.rows());
  const double h = 1.0 / resolution;
  // Pulled slightly toward a generic interior point so that boundaries with
  // small rational coefficients never pass exactly through a grid point.
  const Eigen::Vector3d center(0.3183098861837907, 0.2718281828459045, 0.4098619309703048);
  const double shrink = 0.15 * h;
  auto point = [&](int a, int b) {
    const Eigen::Vector3d g(a * h, b * h, (resolution - a - b) * h);
    return Eigen::Vector3d((1.0 - shrink) * g + shrink * center);
  };
  std::vector<std::vector<int>> owner(resolution + 1, std::vector<int>(resolution + 1, -1));
  std::set<int> pareto;
  for (int a = 0; a <= resolution; ++a) {
    for (int b = 0; a + b <= resolution; ++b) {
      owner[a][b] = UniqueOptimum(loss, point(a, b));
      if (owner[a][b] >= 0) pareto.insert(owner[a][b]);
    }
  }
  std::vector<std::vector<std::vector<Eigen::Vector3d>>> crossings(
      n, std::vector<std::vector<Eigen::Vector3d>>(n));
  const int steps[3][2] = {{1, 0}, {0, 1}, {1, -1}};
  for (int a = 0; a <= resolution; ++a) {
    for (int b = 0; a + b <= resolution; ++b) {
      for (const auto& d : steps) {
        const int a2 = a + d[0];
        const int b2 = b + d[1];
        if (a2 < 0 || b2 < 0 || a2 + b2 > resolution) continue;
        int i = owner[a][b];
        int j = owner[a2][b2];
        if (i < 0 || j < 0 || i == j) continue;
        const Eigen::Vector3d p = point(a, b);
        const Eigen::Vector3d q = point(a2, b2);
        const Eigen::Vector3d diff = (loss.row(i) - loss.row(j)).transpose();
        const double fp = diff.dot(p);
        const double fq = diff.dot(q);
        const Eigen::Vector3d x = p + (fp / (fp - fq)) * (q - p);
        const double value = loss.row(i).dot(x);
        bool optimal = true;
        for (int k = 0; k < n; ++k) optimal = optimal && loss.row(k).dot(x) >= value - 1e-9;
        if (!optimal) continue;
        if (i > j) std::swap(i, j);
        auto& seen = crossings[i][j];
        const bool fresh = std::none_of(seen.begin(), seen.end(), [&](const Eigen::Vector3d& y) {
          return (y - x).cwiseAbs().maxCoeff() < 1e-9;
        });
        if (fresh && seen.size() < 2) seen.push_back(x);
      }
    }
  }
  GridStructure out;
  out.pareto.assign(pareto.begin(), pareto.end());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (crossings[i][j].size() >= 2) out.neighbors.emplace_back(i, j);
    }
  }
  return out;
}

// Random game with M = 3, N in [2, 5], integer losses 0..3 and distinct rows;
// feedback tokens drawn from {a, b}.
inline Game RandomSmallGame(std::uint64_t seed, int max_actions = 5) {
  Rng rng(seed);
  const int n = 2 + static_cast<int>(UniformInt(rng, max_actions - 1));
  Eigen::MatrixXd loss(n, 3);
  for (int i = 0; i < n; ++i) {
    for (;;) {
      for (int j = 0; j < 3; ++j) loss(i, j) = static_cast<double>(UniformInt(rng, 4));
      bool duplicate = false;
      for (int k = 0; k < i; ++k) duplicate = duplicate || loss.row(k) == loss.row(i);
      if (!duplicate) break;
    }
  }
  FeedbackMatrix feedback(n, std::vector<std::string>(3));
  for (auto& row : feedback) {
    for (auto& token : row) token = UniformInt(rng, 2) ? "a" : "b";
  }
  return Game("random-" + std::to_string(seed), std::move(loss), std::move(feedback));
}

}  // namespace pmlab::testing

#endif  // PMLAB_TESTS_SUPPORT_GRID_ORACLE_H_
