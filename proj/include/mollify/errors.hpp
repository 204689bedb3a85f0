#pragma once

#include <stdexcept>
#include <string>

namespace mollify {

/// Raised when an operation is called outside its documented domain.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an integral (or a quantity built on one) fails to reach its
/// tolerance within the subdivision budget.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double value, double error_estimate)
        : std::runtime_error(what), value_(value), error_estimate_(error_estimate) {}

    double value() const noexcept { return value_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double value_;
    double error_estimate_;
};

} // namespace mollify
