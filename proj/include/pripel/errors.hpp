#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pripel {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed XML or JSON input. Carries the 1-based position of the fault.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input that violates the event log model or the attribute schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Resampling was requested but the original log holds no inter-event durations.
class EmptyDistributions : public Error {
 public:
  EmptyDistributions();
};

class UnknownCategory : public Error {
 public:
  UnknownCategory(const std::string& attribute, const std::string& value);
};

/// A metric was requested for an attribute that never carries a value.
class NoValues : public Error {
 public:
  explicit NoValues(const std::string& attribute);
};

}  // namespace pripel
