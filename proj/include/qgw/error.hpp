#pragma once

#include <stdexcept>
#include <string>

namespace qgw {

enum class ErrorKind {
  DivisionByZero,
  DenominatorVanishes,
  PoleAtZero,
  AlphabetMismatch,
  MissingImage,
  NonTerminatingGuard,
  UnknownPresentation,
  SyntaxError,
  UnknownGenerator,
  NonDecreasingRule,
  DimensionMismatch,
  IndexOutOfRange,
  NonHomogeneous,
  NotClosed,
  DependenceViolation,
  ConfigError,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero:      return "DivisionByZero";
    case ErrorKind::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorKind::PoleAtZero:          return "PoleAtZero";
    case ErrorKind::AlphabetMismatch:    return "AlphabetMismatch";
    case ErrorKind::MissingImage:        return "MissingImage";
    case ErrorKind::NonTerminatingGuard: return "NonTerminatingGuard";
    case ErrorKind::UnknownPresentation: return "UnknownPresentation";
    case ErrorKind::SyntaxError:         return "SyntaxError";
    case ErrorKind::UnknownGenerator:    return "UnknownGenerator";
    case ErrorKind::NonDecreasingRule:   return "NonDecreasingRule";
    case ErrorKind::DimensionMismatch:   return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange:     return "IndexOutOfRange";
    case ErrorKind::NonHomogeneous:      return "NonHomogeneous";
    case ErrorKind::NotClosed:           return "NotClosed";
    case ErrorKind::DependenceViolation: return "DependenceViolation";
    case ErrorKind::ConfigError:         return "ConfigError";
  }
  return "Unknown";
}

/// All library failures are reported through this exception type; `kind`
/// identifies the contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace qgw
