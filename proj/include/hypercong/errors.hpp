#pragma once

#include <stdexcept>
#include <string>

namespace hypercong {

/// Base of every recoverable error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotAUnit : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class ZeroArgument : public Error {
 public:
  using Error::Error;
};

class PrecisionExceeded : public Error {
 public:
  using Error::Error;
};

class IntegralityFailure : public Error {
 public:
  using Error::Error;
};

class NonIntegral : public Error {
 public:
  using Error::Error;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

class NonIntegralCoefficient : public Error {
 public:
  using Error::Error;
};

class NoUnitRoot : public Error {
 public:
  using Error::Error;
};

class MultipleUnitRoots : public Error {
 public:
  using Error::Error;
};

class FactorMismatch : public Error {
 public:
  using Error::Error;
};

class OutOfTable : public Error {
 public:
  using Error::Error;
};

/// A self-check inside an algorithm failed; indicates a bug, not bad input.
class ConsistencyFailure : public Error {
 public:
  using Error::Error;
};

/// Arithmetic between residues of different moduli. This is a programming
/// error, so it derives from std::logic_error rather than Error.
class ModulusMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hypercong
