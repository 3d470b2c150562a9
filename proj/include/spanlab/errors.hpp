#pragma once

#include <stdexcept>
#include <string>

namespace spanlab {

/// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text: CSV rows, JSON configuration, dates.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A value outside the domain of an operation (negative duration, year outside
/// a series, too few points to fit, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Reading or writing files.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace spanlab
