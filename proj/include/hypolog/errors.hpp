#pragma once

#include <stdexcept>
#include <string>

namespace hypolog {

// Base of every error raised by the library. Each subclass corresponds to one
// failure kind so callers (and the CLI) can branch on it.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
  using Error::Error;
};

class SingularMatrix : public Error {
public:
  using Error::Error;
};

class SingularState : public Error {
public:
  using Error::Error;
};

class DegenerateGenerator : public Error {
public:
  using Error::Error;
};

class DegenerateDenominator : public Error {
public:
  using Error::Error;
};

class DegenerateEnsemble : public Error {
public:
  using Error::Error;
};

class NonIntegrableTail : public Error {
public:
  using Error::Error;
};

} // namespace hypolog
