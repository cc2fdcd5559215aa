#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dworklab {

enum class ErrorCode {
  NotPrime,
  OddPrimeRequired,
  InvalidArgument,
  PrecisionTooLarge,
  PrecisionTooLow,
  NotIrreducible,
  NotAUnit,
  CtxMismatch,
  NonUnitAtNegativeExponent,
  NotDivisible,
  ZeroPolynomial,
  IndexOutOfRange,
  UnsupportedArity,
  SizeCapExceeded,
  SingularModP,
  NotFactored,
  NotAdmissible,
  DegenerateTuple,
  NonUnitDifference,
  OutsideDomain,
  TooLarge,
  ConfigError,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::OddPrimeRequired: return "OddPrimeRequired";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PrecisionTooLarge: return "PrecisionTooLarge";
    case ErrorCode::PrecisionTooLow: return "PrecisionTooLow";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::CtxMismatch: return "CtxMismatch";
    case ErrorCode::NonUnitAtNegativeExponent: return "NonUnitAtNegativeExponent";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::UnsupportedArity: return "UnsupportedArity";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::SingularModP: return "SingularModP";
    case ErrorCode::NotFactored: return "NotFactored";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::DegenerateTuple: return "DegenerateTuple";
    case ErrorCode::NonUnitDifference: return "NonUnitDifference";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so the
/// CLI can surface it by name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace dworklab
