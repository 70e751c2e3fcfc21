#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xrt {

/// Invalid parameters: non-finite inputs, domain violations, shape mismatches.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Index outside the grid.
class BoundsError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// File open/read/write failure.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed binary file. `offset()` is the byte position where decoding failed.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t offset, const std::string& reason)
      : std::runtime_error("byte offset " + std::to_string(offset) + ": " + reason),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Malformed ray-set configuration text. `line()` is 1-based.
class ConfigError : public ValidationError {
 public:
  ConfigError(std::size_t line, const std::string& reason)
      : ValidationError("line " + std::to_string(line) + ": " + reason), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace xrt
