#pragma once

#include <stdexcept>
#include <string>

namespace qgraf {

enum class ErrorKind {
  InvalidArgument,
  CapExceeded,
  PoleInLowerParameter,
  NonConvergent,
  ZeroParameterPrefactor,
  PoleAtNonpositiveInteger,
  ZeroDivision,
  DoublingCapExceeded,
  DomainError,
  BranchAmbiguity,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::PoleInLowerParameter: return "PoleInLowerParameter";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::ZeroParameterPrefactor: return "ZeroParameterPrefactor";
    case ErrorKind::PoleAtNonpositiveInteger: return "PoleAtNonpositiveInteger";
    case ErrorKind::ZeroDivision: return "ZeroDivision";
    case ErrorKind::DoublingCapExceeded: return "DoublingCapExceeded";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
  }
  return "Unknown";
}

/// Every failure raised by the library. The kind is stable and is what the
/// CLI maps onto exit codes; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace qgraf
