#pragma once

#include <stdexcept>
#include <string>

namespace blockmerge {

/// Raised when two independent computations of the same quantity disagree,
/// or when an identity the library relies on fails to hold.
class InternalConsistencyError : public std::logic_error {
 public:
  explicit InternalConsistencyError(const std::string& what)
      : std::logic_error("internal consistency failure: " + what) {}
};

}  // namespace blockmerge
