#pragma once

#include <stdexcept>
#include <string>

namespace ceor {

// Base for everything this library throws on a violated contract.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation at a pole of the function (zeta at s=1, log-gamma at 0, -1, ...).
class PoleError : public Error {
 public:
  using Error::Error;
};

// Argument outside the operation's stated domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A numerical guarantee could not be met (e.g. the Hardy Z rotation left a
// non-negligible imaginary residue).
class AccuracyError : public Error {
 public:
  using Error::Error;
};

// Bisection bracket never straddled a sign change.
class NoSignChangeError : public Error {
 public:
  using Error::Error;
};

// Invalid parameter set handed to an engine or evaluator.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class EmptyEliteError : public Error {
 public:
  using Error::Error;
};

// Normalization over weights that sum to zero.
class ZeroMassError : public Error {
 public:
  using Error::Error;
};

// Sample point outside the open critical strip.
class OutOfStripError : public Error {
 public:
  using Error::Error;
};

// Frequency estimate requested before any trials were recorded.
class ZeroTrialsError : public Error {
 public:
  using Error::Error;
};

// A decoding step carried probability zero, so the path log-probability
// is undefined.
class ZeroStepError : public Error {
 public:
  using Error::Error;
};

// Sweep range whose endpoints are not integers.
class NonIntegerSpanError : public Error {
 public:
  using Error::Error;
};

// Malformed text input (complex literals, config values).
class TextParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ceor
