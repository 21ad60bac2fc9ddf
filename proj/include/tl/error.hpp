#ifndef TL_ERROR_HPP
#define TL_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tl {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed formula, team, model or dump text.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  // Message without the "line:col: " prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

// A caller broke an operation's precondition (wrong fragment, unknown world,
// domain missing a proposition, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An enumeration would exceed a configured guard. Carries the guard name so
// front ends can tell the user which knob to raise.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& guard, std::size_t limit, std::size_t requested,
                const std::string& hint);

  const std::string& guard() const noexcept { return guard_; }
  std::size_t limit() const noexcept { return limit_; }
  std::size_t requested() const noexcept { return requested_; }

 private:
  std::string guard_;
  std::size_t limit_;
  std::size_t requested_;
};

}  // namespace tl

#endif
