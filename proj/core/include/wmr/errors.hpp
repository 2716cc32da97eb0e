#pragma once

#include <stdexcept>
#include <string>

namespace wmr {

/// A caller-supplied value violates an operation's precondition.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation would exceed a configured size or enumeration budget.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wmr
