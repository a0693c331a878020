// Regenerates src/catalog_{benign,harsh,easy}.inc by rejection sampling
// uniform simplex points with seed 0.
//
//   gen_catalog_points OUT_DIR

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "pmlab/catalog.h"
#include "pmlab/random.h"

namespace {

using pmlab::Rng;

// Uniform on the simplex, rounded to 6 decimals with the last coordinate
// absorbing the rounding so the point still sums to 1.
Eigen::VectorXd Draw(Rng& rng, int m) {
  Eigen::VectorXd p(m);
  for (int j = 0; j < m; ++j) p(j) = -std::log1p(-pmlab::UniformDouble(rng));
  p /= p.sum();
  double head = 0.0;
  for (int j = 0; j + 1 < m; ++j) {
    p(j) = std::round(p(j) * 1e6) / 1e6;
    head += p(j);
  }
  p(m - 1) = std::round((1.0 - head) * 1e6) / 1e6;
  return p;
}

void Collect(Rng& rng, int m, int count, const std::function<bool(const Eigen::VectorXd&)>& keep,
             std::ostream& out) {
  int tries = 0;
  for (int found = 0; found < count; ++tries) {
    const Eigen::VectorXd p = Draw(rng, m);
    if (p.minCoeff() <= 0.0 || !keep(p)) continue;
    ++found;
    out << "    {";
    for (int j = 0; j < m; ++j) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.6f", p(j));
      out << (j ? ", " : "") << buf;
    }
    out << "},\n";
  }
  std::cerr << "  " << count << " points after " << tries << " draws\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_catalog_points OUT_DIR\n";
    return 1;
  }
  const std::string dir = argv[1];
  Rng rng(0);

  const pmlab::Game pricing = pmlab::DynamicPricing(5, 5, 2.0);
  const pmlab::CellStructure pricing_cells = pmlab::AnalyzeCells(pricing);
  auto dangerous = [&](const Eigen::VectorXd& p) {
    return pmlab::DangerousBoundaryDistance(pricing, pricing_cells, p);
  };
  {
    std::ofstream out(dir + "/catalog_benign.inc");
    std::cerr << "benign\n";
    Collect(rng, 5, 15, [&](const Eigen::VectorXd& p) { return dangerous(p) >= 0.1; }, out);
  }
  {
    std::ofstream out(dir + "/catalog_harsh.inc");
    std::cerr << "harsh\n";
    Collect(rng, 5, 15, [&](const Eigen::VectorXd& p) { return dangerous(p) <= 0.01; }, out);
  }

  const pmlab::Game easy = pmlab::EasyGame();
  const pmlab::CellStructure easy_cells = pmlab::AnalyzeCells(easy);
  {
    std::ofstream out(dir + "/catalog_easy.inc");
    std::cerr << "easy\n";
    Collect(rng, 3, 10, [](const Eigen::VectorXd&) { return true; }, out);
    Collect(rng, 3, 5, [&](const Eigen::VectorXd& p) {
      return pmlab::NeighborBoundaryDistance(easy, easy_cells, p) <= 0.01;
    }, out);
  }
  return 0;
}
