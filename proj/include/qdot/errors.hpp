#pragma once

#include <stdexcept>
#include <string>

namespace qdot {

/// Bad input: violated invariant, malformed config, dimension mismatch.
/// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Input is well-formed but outside the validated regime of an
/// approximation or integrator. The CLI maps this to exit code 2.
class RegimeError : public std::runtime_error {
public:
    explicit RegimeError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qdot
