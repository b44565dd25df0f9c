#pragma once

#include <stdexcept>
#include <string>

namespace rislink {

/// Thrown when an input violates a physical or geometric constraint.
/// The message names the rule that failed.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline void require(bool ok, const std::string& rule) {
    if (!ok) throw ValidationError(rule);
}

}  // namespace rislink
