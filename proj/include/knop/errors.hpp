#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace knop {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument outside the domain of an operation (bad index, mixed groups,
/// unknown vertex id, non-crystallographic Cartan entry).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A Weyl group enumeration would exceed the configured element bound.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::size_t bound)
      : Error(what), bound_(bound) {}

  std::size_t bound() const noexcept { return bound_; }

 private:
  std::size_t bound_;
};

/// Malformed JSON syntax. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A document carries a schema_version this library does not understand.
class VersionError : public Error {
 public:
  using Error::Error;
};

/// Syntactically valid JSON that does not follow the document schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace knop
