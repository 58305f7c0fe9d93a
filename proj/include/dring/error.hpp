#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dring {

enum class ErrorCode {
  ZeroInverse,
  NonSquare,
  Singular,
  DimensionMismatch,
  FieldMismatch,
  BadField,
  BadFormat,
  BadParams,
  BadStructure,
  DescriptorMismatch,
  NotInvertible,
  NotADivisionPreset,
  DepthCap,
  ContextMismatch,
  ArityMismatch,
  BadTrace,
  CharTooSmall,
  ScalarInput,
  BadDeterminant,
  SmallField,
  DegenerateChoiceExhausted,
  DepthArityCap,
  ParseError,
  UnboundVariable,
  NoPermissibleSamples,
  VerificationFailed,
};

std::string_view error_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// CLI prints `error_name(code())` so scripts can match on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace dring
