#pragma once

#include <stdexcept>
#include <string>

namespace dirac {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or arguments supplied by the caller.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Malformed or inconsistent input data (files, signals, complexes).
class DataError : public Error {
public:
  using Error::Error;
};

/// Factorization or decomposition failure.
class NumericalError : public Error {
public:
  using Error::Error;
};

} // namespace dirac
