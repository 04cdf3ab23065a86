#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dspec {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition or structural hypothesis does not hold.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A numeric argument lies outside the domain of a closed form (e.g. lambda <= 2).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual graph input. Positions are 1-based; 0 means "not applicable".
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t byte)
      : Error(format(message, line, byte)), line_(line), byte_(byte) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t byte() const noexcept { return byte_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t byte) {
    std::string out = "parse error";
    if (line != 0) out += " at line " + std::to_string(line);
    if (byte != 0) out += (line != 0 ? ", byte " : " at byte ") + std::to_string(byte);
    return out + ": " + message;
  }

  std::size_t line_;
  std::size_t byte_;
};

/// An exhaustive search would examine more candidates than the configured cap allows.
class CapExceededError : public ContractError {
 public:
  CapExceededError(const std::string& message, double required, double cap)
      : ContractError(message), required_(required), cap_(cap) {}

  double required() const noexcept { return required_; }
  double cap() const noexcept { return cap_; }

 private:
  double required_;
  double cap_;
};

/// Exact integer arithmetic overflowed at the declared width.
class OverflowError : public Error {
 public:
  OverflowError(const std::string& message, int first_failing_index)
      : Error(message), index_(first_failing_index) {}

  int first_failing_index() const noexcept { return index_; }

 private:
  int index_;
};

}  // namespace dspec
