// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace blockset {

enum class ErrorKind {
  NotPrimePower,
  TooLarge,
  DivisionByZero,
  SpaceTooLarge,
  DimensionOutOfRange,
  DimensionMismatch,
  CoefficientLoss,
  InvalidForm,
  DuplicateForm,
  NotInUniverse,
  NotBlocking,
  UniverseTooLarge,
  FlatDisjointFromUniverse,
  DimensionTooSmall,
  PreconditionFailed,
  IdenticalPoints,
  BadChooser,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Domain error raised by every module. The kind carries the module-level
/// error name; `what()` carries the diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace blockset
