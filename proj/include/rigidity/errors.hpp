#pragma once

#include <stdexcept>
#include <string>

namespace rigidity {

// Each error class maps to one CLI exit code (see exit_code()).

/// Malformed input or a violated precondition: mismatched groups, bad moduli,
/// non-central scale elements and the like.
class usage_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A violated precondition of an algebraic construction (still a usage error
/// from the caller's point of view).
class precondition_error : public usage_error {
public:
    using usage_error::usage_error;
};

/// A search or enumeration would exceed its configured cap or budget.
class capacity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fixed-width integer arithmetic left the representable range.
class overflow_error : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// An internal check failed that a theorem says cannot fail.
class invariant_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline int exit_code(const std::exception& e) noexcept
{
    if (dynamic_cast<const usage_error*>(&e)) return 2;
    if (dynamic_cast<const capacity_error*>(&e)) return 3;
    if (dynamic_cast<const overflow_error*>(&e)) return 4;
    return 1;
}

} // namespace rigidity
