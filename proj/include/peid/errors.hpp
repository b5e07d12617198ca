#pragma once

#include <stdexcept>
#include <string>

namespace peid {

// Bad inputs: malformed documents, invariant violations, out-of-range
// arguments. The CLI maps these to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Failures of the numerics themselves (degenerate covariance, budget
// exhaustion mid-computation). The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace peid
