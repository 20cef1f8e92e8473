#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pcf {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position` is a 0-based byte offset.
class ParseError : public Error {
public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// A mathematical precondition failed (zero divisor, unbound parameter, ...).
/// `index` carries the sequence index involved, or -1 when not applicable.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& message, long index = -1)
      : Error(index >= 0 ? message + " (index " + std::to_string(index) + ")" : message),
        index_(index) {}

  long index() const noexcept { return index_; }

private:
  long index_;
};

} // namespace pcf
