#pragma once

#include <concepts>
#include <string>
#include <vector>

#include "cdp/core/random.hpp"
#include "cdp/core/types.hpp"

namespace cdp {

/// One outcome of the analytic transition distribution T(s, a, ·), with the
/// deterministic reward attached to that successor.
template <class State>
struct Transition {
    State next{};
    double prob = 0.0;
    double reward = 0.0;
    bool terminal = false;
};

template <class State>
struct WeightedState {
    State state{};
    double weight = 0.0;
};

/// A determinized scenario: a fixed start state plus a private random stream.
/// Replaying it against the same action sequence yields the same trajectory.
template <class State>
struct Scenario {
    int id = 0;
    RandomStream stream;
    State start{};
};

/// Black-box generative model contract: everything a planner, filter or
/// episode runner needs. States are regular value types; all randomness flows
/// through explicit streams, so implementations must be reentrant.
template <class M>
concept GenerativeModel =
    std::copyable<typename M::State> && std::equality_comparable<typename M::State> &&
    requires(const M& m, const typename M::State& s, ActionId a, RandomStream& rng,
             ObservationId z) {
        { m.spec() } -> std::convertible_to<ProblemSpec>;
        { m.step(s, a, rng) } -> std::same_as<StepOutcome<typename M::State>>;
        { m.isTerminal(s) } -> std::same_as<bool>;
        { m.nopAction() } -> std::same_as<ActionId>;
        { m.initialDistribution() } -> std::same_as<std::vector<WeightedState<typename M::State>>>;
        { m.serializeState(s) } -> std::same_as<std::string>;
        { m.renderState(s) } -> std::same_as<std::string>;
        { m.renderObservation(z) } -> std::same_as<std::string>;
        { m.actionName(a) } -> std::same_as<std::string>;
    };

/// Domains that can evaluate observation likelihoods p(z | s', a).
template <class M>
concept ObservationModel =
    GenerativeModel<M> &&
    requires(const M& m, const typename M::State& s, ActionId a, ObservationId z) {
        { m.observationProb(s, a, z) } -> std::same_as<double>;
    };

/// Domains exposing the analytic transition distribution and a finite
/// observation alphabet; required by the exact filter and the oracle.
template <class M>
concept EnumerableModel =
    ObservationModel<M> &&
    requires(const M& m, const typename M::State& s, ActionId a) {
        { m.transitionDistribution(s, a) } -> std::same_as<std::vector<Transition<typename M::State>>>;
        { m.observationCount() } -> std::convertible_to<std::int64_t>;
    };

/// Dwell introspection for discrete-event macro-actions: quiescent states,
/// the per-step probability that the attacker stays idle, and a step variant
/// conditioned on the attacker acting.
template <class M>
concept DwellIntrospectableModel =
    GenerativeModel<M> &&
    requires(const M& m, const typename M::State& s, ActionId a, RandomStream& rng) {
        { m.isQuiescent(s) } -> std::same_as<bool>;
        { m.idleContinueProb() } -> std::convertible_to<double>;
        { m.idleStepReward() } -> std::convertible_to<double>;
        { m.stepActive(s, a, rng) } -> std::same_as<StepOutcome<typename M::State>>;
        { m.idleObservation(s, rng) } -> std::same_as<ObservationId>;
    };

/// Domains providing a full-observability best-response value, used as the
/// planner's upper bound.
template <class M>
concept HindsightValueModel =
    GenerativeModel<M> && requires(const M& m, const typename M::State& s, int depth) {
        { m.hindsightValue(s, depth) } -> std::convertible_to<double>;
    };

/// Sum of the discounted geometric series 1 + g + ... + g^(n-1).
inline double discountedSum(double gamma, int n) {
    if (n <= 0) return 0.0;
    if (gamma == 1.0) return static_cast<double>(n);
    double gn = 1.0;
    for (int i = 0; i < n; ++i) gn *= gamma;  // exact repeated product, matches step-by-step accrual
    return (1.0 - gn) / (1.0 - gamma);
}

}  // namespace cdp
