#pragma once

#include <stdexcept>
#include <string>

namespace bruhat {

/// A computation would exceed its configured resource cap.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A candidate inversion set violates the segment condition at some packet.
class InconsistentSetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace bruhat
