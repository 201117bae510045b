#pragma once

#include <stdexcept>
#include <string>

namespace botsig {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bitstring or composite value does not have the length its producer declares.
class InvalidLength : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

/// Parameters or inputs violate a documented precondition of a construction.
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized data.
class DecodeError : public Error {
 public:
  using Error::Error;
};

}  // namespace botsig
