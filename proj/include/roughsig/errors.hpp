#pragma once

#include <stdexcept>
#include <string>

namespace roughsig {

// Bad user input (malformed files, inconsistent shapes, out-of-range
// parameters). Maps to CLI exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg, long row = -1, long col = -1)
        : std::runtime_error(msg), row(row), col(col) {}
    long row;
    long col;
};

// Numerical failure (blow-up, factorization failure, diverging iteration).
// Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace roughsig
