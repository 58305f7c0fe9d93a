#include "dring/error.hpp"

namespace dring {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::BadField: return "BadField";
    case ErrorCode::BadFormat: return "BadFormat";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::BadStructure: return "BadStructure";
    case ErrorCode::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotADivisionPreset: return "NotADivisionPreset";
    case ErrorCode::DepthCap: return "DepthCap";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::BadTrace: return "BadTrace";
    case ErrorCode::CharTooSmall: return "CharTooSmall";
    case ErrorCode::ScalarInput: return "ScalarInput";
    case ErrorCode::BadDeterminant: return "BadDeterminant";
    case ErrorCode::SmallField: return "SmallField";
    case ErrorCode::DegenerateChoiceExhausted: return "DegenerateChoiceExhausted";
    case ErrorCode::DepthArityCap: return "DepthArityCap";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::NoPermissibleSamples: return "NoPermissibleSamples";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace dring
