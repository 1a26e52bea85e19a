#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ppd {

/// Precondition violation on a public entry point (bad length, exponent, index).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Two objects that must live on the same grid do not.
class GridMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed expression text. `position` is a 0-based character offset.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " at offset " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Expression evaluated outside its domain (division by zero).
/// `position` is the source offset of the offending node, or npos for
/// nodes that were synthesized by differentiation of a literal tree.
class EvalDomainError : public std::domain_error {
public:
    EvalDomainError(const std::string& message, std::size_t position)
        : std::domain_error(message), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Base for numerical failures (non-convergence, non-finite values).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonConvergenceError : public NumericalError {
public:
    NonConvergenceError(const std::string& message, double last_change)
        : NumericalError(message), last_change_(last_change) {}

    double last_change() const noexcept { return last_change_; }

private:
    double last_change_;
};

}  // namespace ppd
