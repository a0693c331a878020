#ifndef PMLAB_ERROR_H_
#define PMLAB_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pmlab {

enum class ErrorCode {
  kShapeMismatch,
  kDuplicateLossRows,
  kBadShape,
  kInvalidArgument,
  kNumericalFailure,
  kNotGloballyObservable,
  kInvalidPlan,
  kEmptyChoiceSet,
  kDimensionMismatch,
  kMixedSchedules,
  kParseError,
};

std::string_view ErrorCodeName(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kDuplicateLossRows: return "DuplicateLossRows";
    case ErrorCode::kBadShape: return "BadShape";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
    case ErrorCode::kNotGloballyObservable: return "NotGloballyObservable";
    case ErrorCode::kInvalidPlan: return "InvalidPlan";
    case ErrorCode::kEmptyChoiceSet: return "EmptyChoiceSet";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kMixedSchedules: return "MixedSchedules";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace pmlab

#endif  // PMLAB_ERROR_H_
