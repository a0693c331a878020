#ifndef PMLAB_POLICY_H_
#define PMLAB_POLICY_H_

#include <span>

#include "pmlab/game.h"

namespace pmlab {

// What a learner sees of the game while playing: it picks an action and is
// handed the one-hot symbol vector S_i e_j. Losses never cross this boundary.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual Action ChooseAction() = 0;
  virtual void Update(Action action, std::span<const double> observation) = 0;
};

}  // namespace pmlab

#endif  // PMLAB_POLICY_H_
