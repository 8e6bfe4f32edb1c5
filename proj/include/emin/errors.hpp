#pragma once

#include <stdexcept>
#include <string>

namespace emin {

// Every failure raised by the library derives from Error so callers can
// catch the whole family at the CLI boundary.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
public:
  using Error::Error;
};

class NoConvergence : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class NotNormalized : public Error {
public:
  using Error::Error;
};

class InvalidState : public Error {
public:
  using Error::Error;
};

class InteractingHamiltonian : public Error {
public:
  using Error::Error;
};

class SupportViolation : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace emin
