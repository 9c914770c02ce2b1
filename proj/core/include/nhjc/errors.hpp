#pragma once

#include <stdexcept>
#include <string>

namespace nhjc {

// Base of every error raised by the library. Callers that only care about
// "something went wrong" can catch this; the CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

// The block is defective: eigenvalues and eigenvectors have coalesced.
class ExceptionalPointError : public Error {
 public:
  using Error::Error;
};

class WrongPhase : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

class NonPositiveData : public Error {
 public:
  using Error::Error;
};

class ZeroCoupling : public Error {
 public:
  using Error::Error;
};

class ZeroWeight : public Error {
 public:
  using Error::Error;
};

class SpecValidationError : public Error {
 public:
  SpecValidationError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class EmptySweep : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nhjc
