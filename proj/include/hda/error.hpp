#pragma once

#include <stdexcept>
#include <string>

namespace hda {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input that is well formed but violates a mathematical precondition
// (unknown cube, non-strict path, missing subordination, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A document that cannot be read: bad syntax, wrong schema, bad rational.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what, int line = 0, int column = 0)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"
                       : what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace hda
