#include "pmlab/baselines.h"

#include "pmlab/error.h"

namespace pmlab {

std::string BaselineName(const BaselineSpec& spec) {
  if (spec.kind == BaselineSpec::Kind::kFixedAction) {
    return "fixed:" + std::to_string(spec.action + 1);
  }
  return "random";
}

Action ChooseBaseline(const BaselineSpec& spec, int num_actions, std::int64_t /*t*/,
                      Rng& rng) {
  if (spec.kind == BaselineSpec::Kind::kFixedAction) return spec.action;
  return UniformInt(rng, num_actions);
}

BaselinePolicy::BaselinePolicy(BaselineSpec spec, int num_actions, std::uint64_t seed)
    : spec_(spec), num_actions_(num_actions), rng_(seed) {
  if (spec_.kind == BaselineSpec::Kind::kFixedAction &&
      (spec_.action < 0 || spec_.action >= num_actions_)) {
    throw Error(ErrorCode::kInvalidArgument,
                "fixed action " + std::to_string(spec_.action + 1) + " outside 1.." +
                    std::to_string(num_actions_));
  }
}

Action BaselinePolicy::ChooseAction() {
  return ChooseBaseline(spec_, num_actions_, round_, rng_);
}

void BaselinePolicy::Update(Action /*action*/, std::span<const double> /*observation*/) {
  ++round_;
}

}  // namespace pmlab
