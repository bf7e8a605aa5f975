#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace value1 {

/// Malformed input document. `position` is a byte offset when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at byte " + std::to_string(position) + ")"), position_(position) {}
  explicit ParseError(const std::string& what) : std::runtime_error(what), position_(0) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Well-formed input that violates a model invariant (row sums, unknown names, ...).
class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A closure, search, or evaluation exceeded its configured budget.
class ResourceLimitError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its domain (non-idempotent argument, dimension mismatch, ...).
class PreconditionError : public std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace value1
