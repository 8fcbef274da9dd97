#pragma once

#include <stdexcept>
#include <string>

namespace ldsw {

enum class ErrorCode {
  DivisionByZero,
  DimensionMismatch,
  ZeroSequence,
  InternalInconsistency,
  InvalidDiscount,
  NotStochastic,
  NotIrreducible,
  SpectralPreconditionViolated,
  NotBounded,
  RelationSearchInconclusive,
  InvalidParameters,
  PreconditionViolated,
  HypothesisViolated,
  NotRealValued,
  DimensionTooHigh,
  ParseError,
  IncompatibleMethod,
  Unsupported,
  PrecisionExhausted,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ldsw
