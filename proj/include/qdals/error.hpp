#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qdals {

enum class ErrorKind {
  NotHermitian,
  Singular,
  ZeroMatrix,
  NotNormalized,
  DegenerateInstance,
  OutOfRange,
  SpectrumViolation,
  DimensionMismatch,
  IndexOutOfRange,
  TooLarge,
  ZeroProjection,
  GenerationFailed,
  ParseError,
  InvariantViolation,
};

std::string_view to_string(ErrorKind kind);

/// Numerical or validation failure raised by the library. The kind is
/// stable and machine-readable; the message carries diagnostics.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace qdals
