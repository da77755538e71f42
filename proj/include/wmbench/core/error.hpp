#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wmbench {

enum class ErrorCode {
  kInvalidRange,
  kInvalidArgument,
  kNotSPD,
  kNonFinite,
  kEventStorm,
  kActionOutOfRange,
  kFormatError,
  kShapeMismatch,
  kJoinError,
  kZeroReference,
};

std::string_view to_string(ErrorCode code);

/// Base of every error raised by the library. Callers that only need the
/// category can catch this and inspect code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

template <ErrorCode C>
class CodedError : public Error {
 public:
  explicit CodedError(const std::string& message) : Error(C, message) {}
};

using InvalidRange = CodedError<ErrorCode::kInvalidRange>;
using InvalidArgument = CodedError<ErrorCode::kInvalidArgument>;
using NotSPD = CodedError<ErrorCode::kNotSPD>;
using NonFinite = CodedError<ErrorCode::kNonFinite>;
using EventStorm = CodedError<ErrorCode::kEventStorm>;
using ActionOutOfRange = CodedError<ErrorCode::kActionOutOfRange>;
using FormatError = CodedError<ErrorCode::kFormatError>;
using ShapeMismatch = CodedError<ErrorCode::kShapeMismatch>;
using JoinError = CodedError<ErrorCode::kJoinError>;
using ZeroReference = CodedError<ErrorCode::kZeroReference>;

}  // namespace wmbench
