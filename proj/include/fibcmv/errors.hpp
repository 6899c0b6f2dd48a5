#pragma once

#include <stdexcept>
#include <string>

namespace fibcmv {

// Numerical inconsistency detected at runtime (root finder stalled, zero
// count mismatch, cross-method disagreement).  CLI maps this to exit code 2.
class NumericError : public std::runtime_error {
  public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fibcmv
