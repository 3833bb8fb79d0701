#pragma once

#include <stdexcept>
#include <string>

namespace sympstab {

/// Bad input: malformed class, non-forward class, missing bounds, invalid root.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A self-check failed. Always an implementation bug, never bad input.
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace sympstab
