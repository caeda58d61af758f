#pragma once

#include <stdexcept>
#include <string>

namespace convcode {

enum class Errc {
  NotPrime,
  NotIrreducible,
  DegreeMismatch,
  DivisionByZero,
  FieldMismatch,
  NotSquare,
  DimensionMismatch,
  SingularMatrix,
  SizeExceedsField,
  SearchExhausted,
  OutsideTriangle,
  InvalidParams,
  PreconditionViolated,
  NotRestrictable,
  MissingBlock,
  CodeMismatch,
  TooFewBlocks,
  SingularSubmatrix,
  InstanceTooLarge,
  Io,
  Format,
};

const char* to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// C API maps them onto its status values.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace convcode
