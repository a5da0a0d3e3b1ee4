#pragma once

#include <stdexcept>
#include <string>

namespace mfib {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied a value outside an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (word, factorization, or transcription files).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A verification step did not hold (necessary condition, consistency check).
class CheckFailure : public Error {
 public:
  using Error::Error;
};

/// Numerical procedure failed to converge or hit a degenerate configuration.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// An output file or directory could not be written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mfib
