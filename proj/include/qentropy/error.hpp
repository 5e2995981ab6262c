#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qentropy {

enum class ErrorCode {
  // Input validation failures.
  NotHermitian,
  TraceNotOne,
  NotPositiveSemidefinite,
  NotNormalized,
  WeightSumInvalid,
  DimensionMismatch,
  NotAProbabilityVector,
  NoValidSplit,
  SplitMismatch,
  DomainViolation,
  InvalidArgument,
  MalformedInput,
  // Numerical failures.
  ConvergenceFailure,
  NoRootFound,
  TooManyRoots,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::NotPositiveSemidefinite: return "NotPositiveSemidefinite";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::WeightSumInvalid: return "WeightSumInvalid";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotAProbabilityVector: return "NotAProbabilityVector";
    case ErrorCode::NoValidSplit: return "NoValidSplit";
    case ErrorCode::SplitMismatch: return "SplitMismatch";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::NoRootFound: return "NoRootFound";
    case ErrorCode::TooManyRoots: return "TooManyRoots";
  }
  return "Unknown";
}

/// True for failures of an iterative method rather than of its input.
constexpr bool is_numerical(ErrorCode code) {
  return code == ErrorCode::ConvergenceFailure || code == ErrorCode::NoRootFound ||
         code == ErrorCode::TooManyRoots;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qentropy
