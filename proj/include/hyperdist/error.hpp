#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperdist {

enum class ErrorKind {
  DivisionByZero,
  NotLimited,
  UnsupportedEvaluation,
  OrderCap,
  NotShadowable,
  UnsupportedForm,
  QuadratureFailure,
  SupportViolation,
  IndependenceError,
  NotSContinuousHere,
  NotStandardSmooth,
  NotAdmitted,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Domain error raised by every engine in the library. The kind is stable and
/// machine-readable; the CLI maps it to a JSON error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hyperdist
