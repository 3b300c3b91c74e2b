#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace courant {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual or JSON input. `position` is a character offset when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position = 0)
      : Error(what + " (at offset " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// JSON document that parses but does not match the expected schema; `path` is a JSON pointer.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& path, const std::string& what)
      : Error((path.empty() ? std::string("/") : path) + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Operands built over different algebroids / graded contexts.
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

/// Data violates a mathematical precondition (singular pairing, wrong arity, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Courant data whose derived structure is inconsistent (theta round trip, master equation).
class StructureError : public Error {
 public:
  using Error::Error;
};

}  // namespace courant
