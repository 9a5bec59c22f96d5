#pragma once

#include <stdexcept>
#include <string>

namespace cdp {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepOnTerminal final : DomainError {
    StepOnTerminal() : DomainError("step() called on a terminal (absorbing) state") {}
};

struct InvalidAction final : DomainError {
    InvalidAction(int action, int actionCount)
        : DomainError("action index " + std::to_string(action) + " out of range [0, " +
                      std::to_string(actionCount) + ")") {}
};

struct UnsupportedOperation final : DomainError {
    explicit UnsupportedOperation(const std::string& what)
        : DomainError("unsupported operation: " + what) {}
};

struct EmptyBelief final : DomainError {
    EmptyBelief() : DomainError("belief has no non-terminal support") {}
};

struct BudgetZero final : DomainError {
    BudgetZero() : DomainError("planner budget must be positive") {}
};

struct BeliefDepleted final : DomainError {
    BeliefDepleted() : DomainError("particle filter depleted: no particle survives the observation") {}
};

struct ZeroEvidence final : DomainError {
    ZeroEvidence() : DomainError("observation has zero probability under the predictive distribution") {}
};

struct UnenumerableDomain final : DomainError {
    UnenumerableDomain() : DomainError("domain does not enumerate states/observations") {}
};

struct HorizonTooDeep final : DomainError {
    HorizonTooDeep(int horizon, int cap)
        : DomainError("horizon " + std::to_string(horizon) + " exceeds cap " +
                      std::to_string(cap)) {}
};

struct UnknownPolicy final : DomainError {
    explicit UnknownPolicy(const std::string& name) : DomainError("unknown policy: " + name) {}
};

/// Scenario-document validation failure; `path` points at the offending node.
struct SchemaError : DomainError {
    std::string path;
    SchemaError(std::string p, const std::string& what)
        : DomainError("schema error at " + p + ": " + what), path(std::move(p)) {}
};

struct DanglingReference final : SchemaError {
    DanglingReference(std::string p, const std::string& id)
        : SchemaError(std::move(p), "reference to unknown asset '" + id + "'") {}
};

}  // namespace cdp
