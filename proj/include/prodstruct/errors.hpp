#pragma once

#include <stdexcept>
#include <string>

namespace prodstruct {

// Base of every error the library throws. Contract violations that are
// part of an operation's result (certificate violations, promise
// violations) are returned as data, never thrown.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: out-of-range ids, self-loops, structure mismatches.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

// An exact oracle was asked to run above its size limit.
class TooLarge : public Error {
 public:
  using Error::Error;
};

// A pluggable separator engine returned something that breaks its contract.
class EngineFailure : public Error {
 public:
  using Error::Error;
};

// Parse errors in the text/JSON formats.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace prodstruct
