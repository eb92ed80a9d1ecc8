#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chancodes {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed automaton, transducer or code text.  `line()` is 1-based, 0 when
/// the error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Sampling from an automaton that accepts nothing.
class EmptyLanguageError : public Error {
 public:
  using Error::Error;
};

}  // namespace chancodes
