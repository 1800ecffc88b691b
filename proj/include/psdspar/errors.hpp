#pragma once

#include <stdexcept>
#include <string>

namespace psdspar {

enum class ErrorCode {
  NonFinite,
  NoConvergence,
  ZeroSum,
  SumMismatch,
  Singular,
  RangeViolation,
  BadEps,
  ExhaustedAttempts,
  CapExceeded,
  NotMinimal,
  TooLarge,
  TooSmall,
  InvalidTable,
  DecompositionMismatch,
  ParseError,
  NotSymmetric,
  Disconnected,
  ZeroWeights,
  NoCollision,
  DegenerateSize,
  DimensionMismatch,
  Precondition,
};

const char* error_code_name(ErrorCode c);

// Single exception type for the whole library; tests and the CLI dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace psdspar
