#pragma once

#include <stdexcept>
#include <string>

namespace sumrank {

/// A caller-supplied argument violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The brute-force oracle refused to run because the search space exceeds the budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::string required)
        : std::runtime_error(what), required_(std::move(required)) {}

    /// Number of vectors the refused run would have enumerated, in decimal.
    const std::string& required() const noexcept { return required_; }

private:
    std::string required_;
};

/// An exactness check inside a closed-form evaluation failed (non-exact division,
/// negative count). Indicates a transcription bug, never bad input.
class InternalInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace sumrank
