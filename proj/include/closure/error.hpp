#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace closure {

enum class ErrorKind {
  InvalidGroundSet,
  LengthMismatch,
  MaskOutOfRange,
  ElementOutOfRange,
  ConditionsViolated,
  UniverseTooLarge,
  UnknownClaim,
  InvalidArgument,
  SyntaxError,
  MissingSubsetKey,
  UnknownElement,
  DuplicateElement,
  DuplicatePair,
  PartialAssignment,
  IoError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidGroundSet: return "InvalidGroundSet";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::MaskOutOfRange: return "MaskOutOfRange";
    case ErrorKind::ElementOutOfRange: return "ElementOutOfRange";
    case ErrorKind::ConditionsViolated: return "ConditionsViolated";
    case ErrorKind::UniverseTooLarge: return "UniverseTooLarge";
    case ErrorKind::UnknownClaim: return "UnknownClaim";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::MissingSubsetKey: return "MissingSubsetKey";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::DuplicateElement: return "DuplicateElement";
    case ErrorKind::DuplicatePair: return "DuplicatePair";
    case ErrorKind::PartialAssignment: return "PartialAssignment";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

/// Base exception for everything the library rejects. The kind is the
/// machine-checkable part; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace closure
