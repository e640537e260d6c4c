#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tqa {

// Malformed input: bad DSL, unknown labels, N < 2, non-cocycle operands.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                        what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// An enumeration would exceed its configured cap.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultCap = 1000000;

}  // namespace tqa
