#ifndef PMLAB_GAME_H_
#define PMLAB_GAME_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pmlab {

// Actions and outcomes are 0-based inside the library. Everything that
// leaves the process (reports, CSV, CLI flags) is 1-based.
using Action = int;
using Outcome = int;

using FeedbackMatrix = std::vector<std::vector<std::string>>;

inline constexpr double kSimplexTolerance = 1e-12;

// S_i: one row per distinct feedback symbol of action i, one column per
// outcome. Symbols are numbered by first occurrence, left to right.
struct SignalMatrix {
  Action action = 0;
  Eigen::MatrixXd entries;
  std::vector<std::string> symbol_order;

  int rows() const { return static_cast<int>(entries.rows()); }
};

// Throws Error(kShapeMismatch) or Error(kDuplicateLossRows). The duplicate
// message names the offending rows 1-based, e.g. "rows 1 and 2".
void ValidateGame(const Eigen::MatrixXd& loss, const FeedbackMatrix& feedback);

// Throws Error(kInvalidArgument) unless p has the given length, nonnegative
// entries and sums to one within kSimplexTolerance.
void CheckSimplexPoint(const Eigen::VectorXd& p, int num_outcomes);

// Finite partial-monitoring game (L, H). Immutable once constructed; signal
// matrices are derived eagerly so games can be shared across threads.
class Game {
 public:
  Game(std::string name, Eigen::MatrixXd loss, FeedbackMatrix feedback);

  const std::string& name() const { return name_; }
  int num_actions() const { return static_cast<int>(loss_.rows()); }
  int num_outcomes() const { return static_cast<int>(loss_.cols()); }
  const Eigen::MatrixXd& loss() const { return loss_; }
  const FeedbackMatrix& feedback() const { return feedback_; }

  // ℓ_i as a column vector.
  Eigen::VectorXd LossVector(Action i) const {
    return loss_.row(i).transpose();
  }

  const SignalMatrix& signal_matrix(Action i) const { return signals_[i]; }
  int num_symbols(Action i) const { return signals_[i].rows(); }

  // Row of S_i that is lit when outcome j occurs under action i.
  int SymbolIndex(Action i, Outcome j) const { return symbol_index_[i][j]; }

  double ExpectedLoss(Action i, const Eigen::VectorXd& p) const {
    return loss_.row(i).dot(p);
  }

  // S_i e_j.
  Eigen::VectorXd Observe(Action i, Outcome j) const;

 private:
  std::string name_;
  Eigen::MatrixXd loss_;
  FeedbackMatrix feedback_;
  std::vector<SignalMatrix> signals_;
  std::vector<std::vector<int>> symbol_index_;
};

SignalMatrix BuildSignalMatrix(const FeedbackMatrix& feedback, Action i);

}  // namespace pmlab

#endif  // PMLAB_GAME_H_
