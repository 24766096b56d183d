#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pfrkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// A size cap (brute-force enumeration, WHT table, pair enumeration) was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A conditional operation was called on an input that violates its hypothesis.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace pfrkit
