#include "convcode/error.hpp"

namespace convcode {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::NotSquare: return "NotSquare";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::SizeExceedsField: return "SizeExceedsField";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::OutsideTriangle: return "OutsideTriangle";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::NotRestrictable: return "NotRestrictable";
    case Errc::MissingBlock: return "MissingBlock";
    case Errc::CodeMismatch: return "CodeMismatch";
    case Errc::TooFewBlocks: return "TooFewBlocks";
    case Errc::SingularSubmatrix: return "SingularSubmatrix";
    case Errc::InstanceTooLarge: return "InstanceTooLarge";
    case Errc::Io: return "Io";
    case Errc::Format: return "Format";
  }
  return "Unknown";
}

}  // namespace convcode
