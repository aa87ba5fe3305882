#pragma once

#include <stdexcept>
#include <string>

namespace lohseg {

// Bad user input: out-of-range values, malformed files, violated preconditions.
// The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation that cannot proceed on otherwise well-formed input
// (degenerate fits, failure to converge). The CLI maps this to exit code 1.
class ComputationError : public std::runtime_error {
public:
    explicit ComputationError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace lohseg
