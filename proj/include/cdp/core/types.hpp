#pragma once

#include <cstdint>
#include <limits>

namespace cdp {

/// Index into a domain's fixed action table.
using ActionId = int;

/// Index into a domain's observation alphabet. Enumerable domains define a
/// bijection between ids and observation values.
using ObservationId = std::uint64_t;

/// Result of one generative-model step. `elapsedSteps` is 1 for primitive
/// steps and the dwell length k for macro (dwell-compressed) outcomes, in
/// which case `reward` already carries the within-macro discounting.
template <class State>
struct StepOutcome {
    State next{};
    ObservationId observation = 0;
    double reward = 0.0;
    bool terminal = false;
    int elapsedSteps = 1;
};

/// Static description of a POMDP: discount, action/observation alphabet
/// sizes, and reward range (used by generic planner bounds).
struct ProblemSpec {
    static constexpr std::int64_t kUnenumerable = -1;

    double discount = 0.95;
    int actionCount = 0;
    std::int64_t observationCount = kUnenumerable;
    double rewardMin = 0.0;
    double rewardMax = 0.0;

    bool observationsEnumerable() const { return observationCount >= 0; }
};

}  // namespace cdp
