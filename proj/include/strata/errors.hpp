#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace strata {

/// Bad parameter values or violated call preconditions. CLI exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// File system failures (missing file, unwritable path). CLI exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally broken input; carries the byte offset where parsing failed.
class ParseError : public IoError {
 public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : IoError(what + " (byte offset " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}

  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_ = 0;
};

/// Well-formed file that lacks required fields or elements.
class SchemaError : public IoError {
 public:
  using IoError::IoError;
};

/// Well-formed file whose values fail range or consistency checks.
class ValidationError : public IoError {
 public:
  using IoError::IoError;
};

/// Input geometry too degenerate for the requested operation. CLI exit code 4.
class DegenerateGeometry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace strata
