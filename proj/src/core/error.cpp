#include "wmbench/core/error.hpp"

namespace wmbench {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidRange: return "InvalidRange";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNotSPD: return "NotSPD";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kEventStorm: return "EventStorm";
    case ErrorCode::kActionOutOfRange: return "ActionOutOfRange";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kJoinError: return "JoinError";
    case ErrorCode::kZeroReference: return "ZeroReference";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace wmbench
