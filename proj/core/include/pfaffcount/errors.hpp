#pragma once

#include <stdexcept>
#include <string>

namespace pfaffcount {

/// A caller-supplied argument violates an operation's precondition.
/// The CLI maps this to exit status 2.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Interval evaluation could not decide a sign or reach a width target
/// within the configured precision ceiling.
class PrecisionExhausted : public std::runtime_error {
public:
    PrecisionExhausted(const std::string& what, int order = -1)
        : std::runtime_error(what), order_(order) {}

    /// Derivative order whose zero could not be resolved, or -1.
    int order() const noexcept { return order_; }

private:
    int order_;
};

/// Malformed serialized input (JSON, rational strings). Exit status 2.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pfaffcount
