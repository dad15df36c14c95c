#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace uc {

enum class ErrorCode {
  NonFundamental,
  NonNegative,
  ZeroArgument,
  UnsupportedCase,
  SingularMatrix,
  NotInert,
  EvenPrime,
  ProductFormulaViolation,
  SplitPrimeSign,
  IndefiniteForm,
  RankMismatch,
  BadPrime,
  CapExceeded,
  Infeasible,
  UnsupportedLocale,
  NotRamifiedAt2,
  Overflow,
  NonStabilized,
  BadExponents,
  BadSize,
  FitMismatch,
  NotIncoherentLocal,
  NotNondegenerate,
  DegenerateT,
  SchemaError,
  SymmetryError,
  SuiteUnknown,
  InvalidArgument,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace uc
