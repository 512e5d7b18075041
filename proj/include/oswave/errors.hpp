#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace oswave {

/// Failure categories raised by the numerical kernels. The CLI maps every
/// NumericalError to exit code 3 and reports `kind` in its error JSON.
enum class ErrorKind {
  StepLimitExceeded,
  NonFiniteState,
  SubdivisionLimit,
  DivisionNearZero,
  BracketFailure,
  NewtonDivergence,
  OutOfBasin,
  RiccatiBlowup,
  RadiusTooLarge,
  BranchAmbiguity,
  ArgumentOutOfRange,
  CriticalLayerSingularity,
  BranchBreak,
  WindowNotFound,
  StiffnessFailure,
  SingularSolve,
};

std::string_view to_string(ErrorKind kind) noexcept;

class NumericalError : public std::runtime_error {
 public:
  NumericalError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Bad caller input (empty profile, non-positive coefficient, malformed
/// contour, ...). The CLI maps these to exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what)
      : std::invalid_argument(what), code_("InvalidArgument") {}
  InvalidArgument(std::string code, const std::string& what)
      : std::invalid_argument(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace oswave
