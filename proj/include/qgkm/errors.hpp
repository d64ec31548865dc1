// Error types shared across the library. The CLI maps them to exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace qgkm {

// Bad input document or structurally broken instance.
struct MalformedInstance : std::runtime_error {
    explicit MalformedInstance(const std::string& what) : std::runtime_error(what) {}
};

// Dimension vector entry outside [0, m_i], or mismatched vector lengths.
struct InfeasibleDimension : std::runtime_error {
    explicit InfeasibleDimension(const std::string& what) : std::runtime_error(what) {}
};

// An operation was called outside its stated precondition.
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// The cocharacter pairs to zero against some edge character.
struct GenericityViolation : std::runtime_error {
    explicit GenericityViolation(const std::string& what) : std::runtime_error(what) {}
};

// A congruence system for a Knutson-Tao component has no solution.
struct InfeasibleSystem : std::runtime_error {
    explicit InfeasibleSystem(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration would exceed the configured budget.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Mutation triple does not describe a mutation of the given fixed point.
struct InvalidMutation : std::runtime_error {
    explicit InvalidMutation(const std::string& what) : std::runtime_error(what) {}
};

// A structural invariant failed after construction; always a bug.
struct InternalInvariantBreach : std::logic_error {
    explicit InternalInvariantBreach(const std::string& what) : std::logic_error(what) {}
};

}  // namespace qgkm
