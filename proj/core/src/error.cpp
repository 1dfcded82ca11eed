// SPDX-License-Identifier: Apache-2.0
#include "blockset/error.hpp"

namespace blockset {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotPrimePower: return "NotPrimePower";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::SpaceTooLarge: return "SpaceTooLarge";
    case ErrorKind::DimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::CoefficientLoss: return "CoefficientLoss";
    case ErrorKind::InvalidForm: return "InvalidForm";
    case ErrorKind::DuplicateForm: return "DuplicateForm";
    case ErrorKind::NotInUniverse: return "NotInUniverse";
    case ErrorKind::NotBlocking: return "NotBlocking";
    case ErrorKind::UniverseTooLarge: return "UniverseTooLarge";
    case ErrorKind::FlatDisjointFromUniverse: return "FlatDisjointFromUniverse";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::IdenticalPoints: return "IdenticalPoints";
    case ErrorKind::BadChooser: return "BadChooser";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace blockset
