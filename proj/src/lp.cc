#include "pmlab/lp.h"

#include <cmath>
#include <limits>
#include <string>

#include "pmlab/error.h"

namespace pmlab::lp {
namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kFeasEps = 1e-9;
constexpr int kDegenerateSwitch = 50;

// Tableau layout follows the classic dictionary form: rows 0..m-1 are
// constraints, row m is the phase-2 objective, row m+1 the phase-1 objective.
// Column n is the auxiliary variable used to reach a feasible start,
// column n+1 the right-hand side.
class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
          const Eigen::VectorXd& c)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        basis_(m_),
        nonbasis_(n_ + 1),
        d_(Eigen::MatrixXd::Zero(m_ + 2, n_ + 2)) {
    d_.topLeftCorner(m_, n_) = a;
    for (int i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      d_(i, n_) = -1.0;
      d_(i, n_ + 1) = b(i);
    }
    for (int j = 0; j < n_; ++j) {
      nonbasis_[j] = j;
      d_(m_, j) = -c(j);
    }
    nonbasis_[n_] = -1;
    d_(m_ + 1, n_) = 1.0;
  }

  Solution Run() {
    Solution out;
    int r = 0;
    for (int i = 1; i < m_; ++i) {
      if (d_(i, n_ + 1) < d_(r, n_ + 1)) r = i;
    }
    if (m_ > 0 && d_(r, n_ + 1) < -kFeasEps) {
      Pivot(r, n_);
      if (!Simplex(2) || d_(m_ + 1, n_ + 1) < -kFeasEps) {
        out.status = Status::kInfeasible;
        return out;
      }
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] != -1) continue;
        int s = 0;
        for (int j = 1; j <= n_; ++j) {
          if (Less(d_(i, j), nonbasis_[j], d_(i, s), nonbasis_[s])) s = j;
        }
        Pivot(i, s);
      }
    }
    const bool bounded = Simplex(1);
    out.x = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= 0 && basis_[i] < n_) out.x(basis_[i]) = d_(i, n_ + 1);
    }
    out.status = bounded ? Status::kOptimal : Status::kUnbounded;
    out.objective = bounded ? d_(m_, n_ + 1) : std::numeric_limits<double>::infinity();
    return out;
  }

 private:
  static bool Less(double a, int ia, double b, int ib) {
    return a < b || (a == b && ia < ib);
  }

  void Pivot(int r, int s) {
    const double inv = 1.0 / d_(r, s);
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || std::abs(d_(i, s)) <= kPivotEps) continue;
      const double f = d_(i, s) * inv;
      d_.row(i) -= f * d_.row(r);
      d_(i, s) = d_(r, s) * f;
    }
    for (int j = 0; j < n_ + 2; ++j) {
      if (j != s) d_(r, j) *= inv;
    }
    for (int i = 0; i < m_ + 2; ++i) {
      if (i != r) d_(i, s) *= -inv;
    }
    d_(r, s) = inv;
    std::swap(basis_[r], nonbasis_[s]);
  }

  bool Simplex(int phase) {
    const int x = m_ + phase - 1;
    int degenerate_run = 0;
    const long budget = 5000L + 200L * (m_ + n_);
    for (long iter = 0;; ++iter) {
      if (iter > budget) {
        throw Error(ErrorCode::kNumericalFailure,
                    "simplex exceeded " + std::to_string(budget) + " pivots");
      }
      // Dantzig pricing; Bland's rule once progress stalls.
      const bool bland = degenerate_run >= kDegenerateSwitch;
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (nonbasis_[j] == -phase) continue;
        if (bland) {
          if (d_(x, j) < -kFeasEps && (s == -1 || nonbasis_[j] < nonbasis_[s])) s = j;
        } else if (s == -1 || Less(d_(x, j), nonbasis_[j], d_(x, s), nonbasis_[s])) {
          s = j;
        }
      }
      if (s == -1 || d_(x, s) >= -kFeasEps) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (d_(i, s) <= kPivotEps) continue;
        if (r == -1 || Less(d_(i, n_ + 1) / d_(i, s), basis_[i],
                            d_(r, n_ + 1) / d_(r, s), basis_[r])) {
          r = i;
        }
      }
      if (r == -1) return false;
      degenerate_run = std::abs(d_(r, n_ + 1)) <= kPivotEps ? degenerate_run + 1 : 0;
      Pivot(r, s);
    }
  }

  int m_, n_;
  std::vector<int> basis_, nonbasis_;
  Eigen::MatrixXd d_;
};

}  // namespace

Solution Solve(const LinearProgram& program) {
  const int n = program.num_vars();
  const int m = static_cast<int>(program.less_equal().size() + 2 * program.equal().size());
  Eigen::MatrixXd a(m, n);
  Eigen::VectorXd b(m);
  int row = 0;
  for (const auto& [coeffs, rhs] : program.less_equal()) {
    a.row(row) = coeffs.transpose();
    b(row++) = rhs;
  }
  for (const auto& [coeffs, rhs] : program.equal()) {
    a.row(row) = coeffs.transpose();
    b(row++) = rhs;
    a.row(row) = -coeffs.transpose();
    b(row++) = -rhs;
  }
  if (m == 0) {
    Solution out;
    if ((program.objective().array() > 0.0).any()) {
      out.status = Status::kUnbounded;
      out.objective = std::numeric_limits<double>::infinity();
    } else {
      out.status = Status::kOptimal;
    }
    out.x = Eigen::VectorXd::Zero(n);
    return out;
  }
  Tableau tableau(a, b, program.objective());
  return tableau.Run();
}

}  // namespace pmlab::lp
