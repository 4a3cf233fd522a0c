#pragma once

#include <stdexcept>
#include <string>

namespace twomode {

// Base of every library error. Derived types name the failure so callers can
// branch on them; the message carries the offending values.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A cat superposition whose normalization vanishes (odd cat of the vacuum).
class NullState : public Error {
 public:
  using Error::Error;
};

class TruncationTooLarge : public Error {
 public:
  using Error::Error;
};

class TruncationTooSmall : public Error {
 public:
  using Error::Error;
};

// Closed forms exist only on resonance (and some only for pump phase pi/2).
class DetuningNotSupported : public Error {
 public:
  using Error::Error;
};

class UnsupportedPhase : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Violated operation precondition (bad parameter ranges and the like).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Configuration file or command-line problems; `field` names the JSON path.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace twomode
