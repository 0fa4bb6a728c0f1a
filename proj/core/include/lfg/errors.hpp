#pragma once

#include <stdexcept>
#include <string>

namespace lfg {

enum class ErrorKind {
  NotClosed,
  NoIdentityAtZero,
  NotAssociative,
  NoInverse,
  IndexOutOfRange,
  NotASubgroup,
  ArityMismatch,
  BaseMismatch,
  NotATransversal,
  IdentityNotRepresentative,
  BudgetExceeded,
  InvariantViolation,
  ParameterNotOrderTwo,
  NotAFullListing,
  PreconditionFailed,
  ElementInBase,
  NoSwapRealization,
  ParseError,
  UnknownSuite,
  CorpusLoadError,
};

const char* to_string(ErrorKind k);

/// Library-wide error type.  `what()` carries the kind name plus a witness
/// describing the first offending tuple / clause / line.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lfg
