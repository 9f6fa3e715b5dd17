#pragma once

#include <stdexcept>
#include <string>

namespace qhlab {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
public:
  using Error::Error;
};

// A point was passed to a domain-bound operation but lies outside the domain.
class DomainMembershipError : public Error {
public:
  using Error::Error;
};

class DiscretizationError : public Error {
public:
  using Error::Error;
};

class UnreachableError : public Error {
public:
  using Error::Error;
};

// Coincident points where distinct ones are required.
class DegenerateError : public Error {
public:
  using Error::Error;
};

class UnsupportedError : public Error {
public:
  using Error::Error;
};

// Numerical inversion could not bracket a root.
class RangeError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace qhlab
