#ifndef PMLAB_CATALOG_H_
#define PMLAB_CATALOG_H_

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "pmlab/game.h"
#include "pmlab/geometry.h"

namespace pmlab {

// L = [[1,1,0],[0,1,1],[1,0,1]], H = [[a,b,b],[b,a,b],[b,b,a]].
Game EasyGame();

// Seller posts price i, buyer threshold j: loss c if j < i (no sale),
// j − i otherwise; feedback "n"/"y". Throws Error(kBadShape) unless
// n == m >= 2 and c > 0.
Game DynamicPricing(int n, int m, double c);

// "easy" or "dynamic-pricing:N,M,c". Throws Error(kInvalidArgument).
Game PresetGame(std::string_view name);

struct LabeledOpponent {
  std::string label;
  Eigen::VectorXd p;
};

struct NamedSetting {
  std::string name;
  Game game;
  std::vector<LabeledOpponent> opponents;
};

// "benign" and "harsh" on DynamicPricing(5, 5, 2), "easy" on EasyGame();
// 15 fixed opponents each.
std::vector<NamedSetting> BenchmarkSettings();

// Throws Error(kInvalidArgument) for an unknown name.
NamedSetting FindSetting(std::string_view name);

// Smallest total-variation distance from p to C_i ∩ C_j over the neighbor
// pairs that are not locally observable. +inf if there are none.
double DangerousBoundaryDistance(const Game& game, const CellStructure& cells,
                                 const Eigen::VectorXd& p);

// Smallest total-variation distance from p to any neighbor boundary.
double NeighborBoundaryDistance(const Game& game, const CellStructure& cells,
                                const Eigen::VectorXd& p);

}  // namespace pmlab

#endif  // PMLAB_CATALOG_H_
