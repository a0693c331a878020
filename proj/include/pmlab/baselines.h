#ifndef PMLAB_BASELINES_H_
#define PMLAB_BASELINES_H_

#include <cstdint>
#include <string>

#include "pmlab/policy.h"
#include "pmlab/random.h"

namespace pmlab {

struct BaselineSpec {
  enum class Kind { kUniformRandom, kFixedAction };
  Kind kind = Kind::kUniformRandom;
  Action action = 0;  // kFixedAction only

  static BaselineSpec UniformRandom() { return {Kind::kUniformRandom, 0}; }
  static BaselineSpec Fixed(Action a) { return {Kind::kFixedAction, a}; }
};

std::string BaselineName(const BaselineSpec& spec);

// Round t is accepted for interface symmetry with CBP; neither baseline
// depends on it.
Action ChooseBaseline(const BaselineSpec& spec, int num_actions, std::int64_t t, Rng& rng);

class BaselinePolicy : public Policy {
 public:
  // Throws Error(kInvalidArgument) for an out-of-range fixed action.
  BaselinePolicy(BaselineSpec spec, int num_actions, std::uint64_t seed);

  Action ChooseAction() override;
  void Update(Action action, std::span<const double> observation) override;

 private:
  BaselineSpec spec_;
  int num_actions_;
  std::int64_t round_ = 1;
  Rng rng_;
};

}  // namespace pmlab

#endif  // PMLAB_BASELINES_H_
