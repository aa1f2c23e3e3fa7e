#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tamefgl {

enum class ErrorCode {
  InvalidArgument,
  NotPrime,
  PrecisionUnsupported,
  AllCoefficientsBelowPrecision,
  DegreeMismatch,
  RingMismatch,
  VarArityMismatch,
  NonzeroConstantTerm,
  CapTooSmall,
  CapTooLarge,
  DimMismatch,
  SingularCurve,
  NonInvertibleLinearPart,
  ZeroSeries,
  NotAPowerOfEll,
  ZeroExponent,
  Unsupported,
  HypothesisViolated,
  PrecisionExhausted,
  CapMismatch,
  EllTooSmall,
  NotFound,
  OffsetNotDivisible,
  BadReduction,
  AsymmetryTooLarge,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can triage without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tamefgl
