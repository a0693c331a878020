#include "pmlab/game.h"

#include <cmath>
#include <utility>

#include "pmlab/error.h"

namespace pmlab {

void ValidateGame(const Eigen::MatrixXd& loss, const FeedbackMatrix& feedback) {
  const auto n = loss.rows();
  const auto m = loss.cols();
  if (n < 2 || m < 2) {
    throw Error(ErrorCode::kShapeMismatch,
                "loss matrix must be at least 2x2, got " + std::to_string(n) +
                    "x" + std::to_string(m));
  }
  if (static_cast<Eigen::Index>(feedback.size()) != n) {
    throw Error(ErrorCode::kShapeMismatch,
                "loss has " + std::to_string(n) + " rows but feedback has " +
                    std::to_string(feedback.size()));
  }
  for (std::size_t i = 0; i < feedback.size(); ++i) {
    if (static_cast<Eigen::Index>(feedback[i].size()) != m) {
      throw Error(ErrorCode::kShapeMismatch,
                  "feedback row " + std::to_string(i + 1) + " has " +
                      std::to_string(feedback[i].size()) + " entries, expected " +
                      std::to_string(m));
    }
  }
  if (!loss.allFinite()) {
    throw Error(ErrorCode::kShapeMismatch, "loss matrix has non-finite entries");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = i + 1; k < n; ++k) {
      if (loss.row(i) == loss.row(k)) {
        throw Error(ErrorCode::kDuplicateLossRows,
                    "rows " + std::to_string(i + 1) + " and " +
                        std::to_string(k + 1) + " of the loss matrix are identical");
      }
    }
  }
}

void CheckSimplexPoint(const Eigen::VectorXd& p, int num_outcomes) {
  if (p.size() != num_outcomes) {
    throw Error(ErrorCode::kInvalidArgument,
                "strategy has " + std::to_string(p.size()) + " entries, expected " +
                    std::to_string(num_outcomes));
  }
  if ((p.array() < 0.0).any() || !p.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "strategy has negative entries");
  }
  if (std::abs(p.sum() - 1.0) > kSimplexTolerance) {
    throw Error(ErrorCode::kInvalidArgument, "strategy does not sum to one");
  }
}

SignalMatrix BuildSignalMatrix(const FeedbackMatrix& feedback, Action i) {
  const auto& row = feedback[i];
  SignalMatrix s;
  s.action = i;
  std::vector<int> index(row.size());
  for (std::size_t l = 0; l < row.size(); ++l) {
    int k = 0;
    while (k < static_cast<int>(s.symbol_order.size()) &&
           s.symbol_order[k] != row[l]) {
      ++k;
    }
    if (k == static_cast<int>(s.symbol_order.size())) {
      s.symbol_order.push_back(row[l]);
    }
    index[l] = k;
  }
  s.entries = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(s.symbol_order.size()),
                                    static_cast<Eigen::Index>(row.size()));
  for (std::size_t l = 0; l < row.size(); ++l) {
    s.entries(index[l], static_cast<Eigen::Index>(l)) = 1.0;
  }
  return s;
}

Game::Game(std::string name, Eigen::MatrixXd loss, FeedbackMatrix feedback)
    : name_(std::move(name)), loss_(std::move(loss)), feedback_(std::move(feedback)) {
  ValidateGame(loss_, feedback_);
  signals_.reserve(feedback_.size());
  symbol_index_.resize(feedback_.size());
  for (Action i = 0; i < num_actions(); ++i) {
    signals_.push_back(BuildSignalMatrix(feedback_, i));
    auto& index = symbol_index_[i];
    index.resize(num_outcomes());
    for (Outcome j = 0; j < num_outcomes(); ++j) {
      signals_[i].entries.col(j).maxCoeff(&index[j]);
    }
  }
}

Eigen::VectorXd Game::Observe(Action i, Outcome j) const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(num_symbols(i));
  y(SymbolIndex(i, j)) = 1.0;
  return y;
}

}  // namespace pmlab
