#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nfv {

enum class ErrorKind {
  PoleError,
  PrecisionExceeded,
  DivergentParameters,
  DomainError,
  NoConvergence,
  SlowDecay,
  NotFundamental,
  OutOfTableRange,
  ContinuationUnavailable,
  FormatError,
  MultiplicativityViolation,
  InvalidSpec,
  ConfluentParameters,
  UnsupportedMultiplicity,
  MarginalConvergence,
  BelowCrossover,
  SingularParameter,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every library failure is an Error tagged with its kind; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace nfv
