#include "pmlab/catalog.h"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "pmlab/error.h"

namespace pmlab {

Game EasyGame() {
  Eigen::MatrixXd loss(3, 3);
  loss << 1, 1, 0,
          0, 1, 1,
          1, 0, 1;
  FeedbackMatrix feedback = {{"a", "b", "b"}, {"b", "a", "b"}, {"b", "b", "a"}};
  return Game("easy", std::move(loss), std::move(feedback));
}

Game DynamicPricing(int n, int m, double c) {
  if (n != m || n < 2 || !(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::kBadShape, "dynamic pricing needs N = M >= 2 and c > 0");
  }
  Eigen::MatrixXd loss(n, m);
  FeedbackMatrix feedback(n, std::vector<std::string>(m));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      loss(i, j) = j < i ? c : j - i;
      feedback[i][j] = j < i ? "n" : "y";
    }
  }
  char name[64];
  std::snprintf(name, sizeof(name), "dynamic-pricing:%d,%d,%g", n, m, c);
  return Game(name, std::move(loss), std::move(feedback));
}

Game PresetGame(std::string_view name) {
  if (name == "easy") return EasyGame();
  constexpr std::string_view kPricing = "dynamic-pricing:";
  if (name.starts_with(kPricing)) {
    std::string_view rest = name.substr(kPricing.size());
    std::array<double, 3> v{};
    for (std::size_t k = 0; k < v.size(); ++k) {
      const std::size_t comma = rest.find(',');
      const std::string_view field = rest.substr(0, comma);
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v[k]);
      if (ec != std::errc() || ptr != field.data() + field.size() ||
          (k < 2 && v[k] != std::floor(v[k])) || (k < 2) == (comma == std::string_view::npos)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "expected dynamic-pricing:N,M,c, got '" + std::string(name) + "'");
      }
      rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
    }
    return DynamicPricing(static_cast<int>(v[0]), static_cast<int>(v[1]), v[2]);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown preset '" + std::string(name) + "'");
}

namespace {

// Generated once by tools/gen_catalog_points with seed 0.
constexpr double kBenign[15][5] = {
#include "catalog_benign.inc"
};
constexpr double kHarsh[15][5] = {
#include "catalog_harsh.inc"
};
constexpr double kEasy[15][3] = {
#include "catalog_easy.inc"
};
constexpr int kEasyInterior = 10;

template <std::size_t M>
std::vector<LabeledOpponent> Opponents(const double (&points)[15][M], int split,
                                       const char* first, const char* second) {
  std::vector<LabeledOpponent> out;
  for (int k = 0; k < 15; ++k) {
    Eigen::VectorXd p(static_cast<int>(M));
    for (std::size_t j = 0; j < M; ++j) p(j) = points[k][j];
    out.push_back({k < split ? first : second, std::move(p)});
  }
  return out;
}

double MinBoundaryDistance(const Game& game, const std::vector<ActionPair>& pairs,
                           const Eigen::VectorXd& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const ActionPair& pair : pairs) {
    const auto d = TotalVariationDistance(BoundaryConstraints(game, pair.first, pair.second), p);
    if (d) best = std::min(best, d->distance);
  }
  return best;
}

}  // namespace

std::vector<NamedSetting> BenchmarkSettings() {
  const Game pricing = DynamicPricing(5, 5, 2.0);
  return {
      {"benign", pricing, Opponents(kBenign, 15, "benign", "benign")},
      {"harsh", pricing, Opponents(kHarsh, 15, "harsh", "harsh")},
      {"easy", EasyGame(), Opponents(kEasy, kEasyInterior, "interior", "near-boundary")},
  };
}

NamedSetting FindSetting(std::string_view name) {
  for (NamedSetting& s : BenchmarkSettings()) {
    if (s.name == name) return std::move(s);
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown setting '" + std::string(name) + "' (benign, harsh, easy)");
}

double DangerousBoundaryDistance(const Game& game, const CellStructure& cells,
                                 const Eigen::VectorXd& p) {
  std::vector<ActionPair> dangerous;
  for (const ActionPair& pair : cells.neighbors) {
    if (!cells.IsLocallyObservable(pair)) dangerous.push_back(pair);
  }
  return MinBoundaryDistance(game, dangerous, p);
}

double NeighborBoundaryDistance(const Game& game, const CellStructure& cells,
                                const Eigen::VectorXd& p) {
  return MinBoundaryDistance(game, cells.neighbors, p);
}

}  // namespace pmlab
