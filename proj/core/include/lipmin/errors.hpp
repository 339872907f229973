#pragma once

#include <stdexcept>
#include <string>

namespace lipmin {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested time lies outside the path window, or the window is too small
/// to contain the contact points an operation needs.
class WindowError : public Error {
 public:
  using Error::Error;
};

/// A window infimum was attained too close to the window edge for the
/// truncated computation to stand in for the infinite-horizon one.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a closed-form law (negative radicand, t <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested quantity has no implementation for these parameters.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace lipmin
