#pragma once

#include <stdexcept>
#include <string>

namespace t2p {

/// Raised when a parameter set violates its invariants (bad epsilon, h not dividing d, ...).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an operation is called outside its contract (length mismatch, bad index, ...).
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace t2p
