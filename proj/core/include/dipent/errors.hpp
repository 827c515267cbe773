#pragma once

#include <stdexcept>
#include <string>

namespace dipent {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed an index, size or flag outside the documented range.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Malformed cluster configuration or CSV input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An input violated a numerical contract (Hermiticity, trace, positivity).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Evaluation would overflow; e.g. |beta| too large for a finite Gibbs state.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A function was evaluated outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace dipent
