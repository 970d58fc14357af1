#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace satgen {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition (bad sizes, out-of-range
/// arguments, malformed configuration).
class ContractError : public Error {
public:
  using Error::Error;
};

/// Malformed input text (DIMACS, JSON, JSONL). Carries a line number when
/// one is known; line 0 means "not line-addressable".
class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}

  std::size_t line() const { return line_; }

private:
  std::size_t line_ = 0;
};

/// Requested clause count exceeds the satisfying-clause capacity of the
/// parameter space.
class CapacityError : public Error {
public:
  CapacityError(const std::string& msg, std::uint64_t capacity)
      : Error(msg), capacity_(capacity) {}

  std::uint64_t capacity() const { return capacity_; }

private:
  std::uint64_t capacity_ = 0;
};

/// The retry budget ran out before enough distinct instances were found.
class ExhaustionError : public Error {
public:
  ExhaustionError(const std::string& msg, std::size_t found)
      : Error(msg), found_(found) {}

  std::size_t found() const { return found_; }

private:
  std::size_t found_ = 0;
};

/// A solver conflict/time budget was exceeded before a decision was reached.
class BudgetExceededError : public Error {
public:
  using Error::Error;
};

/// Filesystem-level failure (missing file, unwritable path, checksum
/// mismatch on load).
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace satgen
