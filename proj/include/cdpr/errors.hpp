#pragma once

#include <stdexcept>
#include <string>

namespace cdpr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed robot description, or a pose that collapses a cable.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Wrench matrix without full row rank.
class SingularConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside its documented domain (bounds, preload, sizes).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// Request that a desk-scale oracle cannot serve (e.g. too much redundancy).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace cdpr
