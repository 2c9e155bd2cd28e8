#pragma once

#include <stdexcept>
#include <string>

namespace aniso {

/// Precondition or invariant violated by caller-supplied data.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// File could not be read, written or parsed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A profile carries no directional information (all-zero energy).
class DegenerateProfileError : public std::runtime_error {
 public:
  DegenerateProfileError() : std::runtime_error("degenerate profile") {}
  explicit DegenerateProfileError(const std::string& what)
      : std::runtime_error("degenerate profile: " + what) {}
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

}  // namespace detail
}  // namespace aniso
