#ifndef PMLAB_LP_H_
#define PMLAB_LP_H_

#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace pmlab::lp {

// maximize objective·x  subject to  A_le x <= b_le,  A_eq x = b_eq,  x >= 0.
// Dense and small: the programs built by this library have tens of columns.
class LinearProgram {
 public:
  explicit LinearProgram(int num_vars)
      : num_vars_(num_vars), objective_(Eigen::VectorXd::Zero(num_vars)) {}

  int num_vars() const { return num_vars_; }

  void SetObjective(Eigen::VectorXd c) { objective_ = std::move(c); }
  void AddLessEqual(Eigen::VectorXd a, double b) {
    less_equal_.emplace_back(std::move(a), b);
  }
  void AddEqual(Eigen::VectorXd a, double b) { equal_.emplace_back(std::move(a), b); }

  const Eigen::VectorXd& objective() const { return objective_; }
  const std::vector<std::pair<Eigen::VectorXd, double>>& less_equal() const {
    return less_equal_;
  }
  const std::vector<std::pair<Eigen::VectorXd, double>>& equal() const {
    return equal_;
  }

 private:
  int num_vars_;
  Eigen::VectorXd objective_;
  std::vector<std::pair<Eigen::VectorXd, double>> less_equal_;
  std::vector<std::pair<Eigen::VectorXd, double>> equal_;
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Solution {
  Status status = Status::kInfeasible;
  double objective = 0.0;
  Eigen::VectorXd x;
};

// Two-phase tableau simplex. Dantzig pricing, falling back to Bland's rule
// after a run of degenerate pivots. Throws Error(kNumericalFailure) if the
// pivot budget is exhausted.
Solution Solve(const LinearProgram& program);

}  // namespace pmlab::lp

#endif  // PMLAB_LP_H_
