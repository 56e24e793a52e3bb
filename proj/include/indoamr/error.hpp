#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace indoamr {

// Malformed input data (corpus files, model files, PENMAN text).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text-level syntax error with a 1-based source position.
class ParseError : public FormatError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : FormatError(what + " at line " + std::to_string(line) + ", column " +
                    std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Invalid options, parameters or missing resources.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace indoamr
