#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rankproj {

enum class ErrorKind {
  invalid_input,  // malformed or out-of-contract arguments
  parse,          // unreadable CSV / JSON input
  not_found,      // unknown item, scheme or session
  stale,          // derived artifact no longer matches its inputs
  cancelled,      // cooperative cancellation of a long computation
  io,             // filesystem failures
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// CSV parse failure; row and column are 1-based positions in the source.
class ParseError : public Error {
 public:
  ParseError(std::size_t row, std::size_t column, const std::string& what)
      : Error(ErrorKind::parse, "row " + std::to_string(row) + ", column " +
                                    std::to_string(column) + ": " + what),
        row_(row),
        column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

}  // namespace rankproj
