#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vassiliev {

enum class ErrorKind {
  kMalformedToken,
  kLabelRoleMismatch,
  kSignMismatch,
  kIndexOutOfRange,
  kUnsupportedOrientationCase,
  kIoError,
  kParseError,
  kUnbalancedLabel,
  kSameChord,
  kUnknownLabel,
  kNonIntegerResult,
  kCalibrationUnresolved,
  kTooLarge,
  kWrongDegree,
  kUnknownInvariant,
  kDegreeTooHigh,
  kUnderdeterminedSystem,
  kMissingValue,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kMalformedToken: return "MalformedToken";
    case ErrorKind::kLabelRoleMismatch: return "LabelRoleMismatch";
    case ErrorKind::kSignMismatch: return "SignMismatch";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kUnsupportedOrientationCase: return "UnsupportedOrientationCase";
    case ErrorKind::kIoError: return "IoError";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kUnbalancedLabel: return "UnbalancedLabel";
    case ErrorKind::kSameChord: return "SameChord";
    case ErrorKind::kUnknownLabel: return "UnknownLabel";
    case ErrorKind::kNonIntegerResult: return "NonIntegerResult";
    case ErrorKind::kCalibrationUnresolved: return "CalibrationUnresolved";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kWrongDegree: return "WrongDegree";
    case ErrorKind::kUnknownInvariant: return "UnknownInvariant";
    case ErrorKind::kDegreeTooHigh: return "DegreeTooHigh";
    case ErrorKind::kUnderdeterminedSystem: return "UnderdeterminedSystem";
    case ErrorKind::kMissingValue: return "MissingValue";
  }
  return "Unknown";
}

/// Every failure raised by the library. `kind()` is the stable, testable part;
/// the message is for humans. `line()` is nonzero only for table parse errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::size_t line = 0)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), line_(line) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  std::size_t line_;
};

}  // namespace vassiliev
