#pragma once

#include <stdexcept>
#include <string>

namespace goodpair {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Mismatched variable counts or matrix shapes.
struct DimensionError : Error {
  explicit DimensionError(const std::string& what) : Error(what) {}
};

// A precondition of the operation does not hold (non-homogeneous input,
// dependent substitution forms, out-of-range parameters, ...).
struct ContractError : Error {
  explicit ContractError(const std::string& what) : Error(what) {}
};

// Malformed textual input. line/column are 1-based; 0 means unknown.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(format(what, line, column)), line(line), column(column) {}
  std::size_t line;
  std::size_t column;

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    return what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
  }
};

}  // namespace goodpair
