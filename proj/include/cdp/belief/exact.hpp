#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "cdp/belief/particle.hpp"
#include "cdp/core/errors.hpp"
#include "cdp/core/model.hpp"

namespace cdp {

/// Enumerated posterior: probability per state, support kept sorted by the
/// state's ordering so two equal beliefs compare equal structurally.
template <class State>
struct ExactBelief {
    std::vector<std::pair<State, double>> probs;

    bool empty() const { return probs.empty(); }

    static ExactBelief pointMass(State s) { return ExactBelief{{{std::move(s), 1.0}}}; }

    static ExactBelief fromMap(std::map<State, double> mass) {
        ExactBelief b;
        b.probs.assign(mass.begin(), mass.end());
        b.normalize();
        return b;
    }

    double prob(const State& s) const {
        auto it = std::lower_bound(probs.begin(), probs.end(), s,
                                   [](const auto& e, const State& k) { return e.first < k; });
        return (it != probs.end() && it->first == s) ? it->second : 0.0;
    }

    double total() const {
        double t = 0.0;
        for (const auto& [s, p] : probs) t += p;
        return t;
    }

    void normalize() {
        const double t = total();
        if (t <= 0.0) throw ZeroEvidence();
        for (auto& [s, p] : probs) p /= t;
    }

    std::pair<State, double> mode() const {
        const std::pair<State, double>* best = nullptr;
        for (const auto& e : probs)
            if (!best || e.second > best->second) best = &e;
        return *best;
    }
};

template <class State>
double totalVariation(const ExactBelief<State>& a, const ExactBelief<State>& b) {
    std::map<State, double> diff;
    for (const auto& [s, p] : a.probs) diff[s] += p;
    for (const auto& [s, p] : b.probs) diff[s] -= p;
    double tv = 0.0;
    for (const auto& [s, d] : diff) tv += std::abs(d);
    return tv / 2.0;
}

template <class State, GenerativeModel M>
ExactBelief<State> exactFromParticles(const ParticleBelief<State>& belief, const M&) {
    std::map<State, double> mass;
    for (std::size_t i = 0; i < belief.size(); ++i) mass[belief.particles[i]] += belief.weightAt(i);
    return ExactBelief<State>::fromMap(std::move(mass));
}

/// Predicted next-state distribution sum_s T(s, a, s') b(s), split into the
/// surviving (non-terminal) part and the probability that the episode ends.
template <EnumerableModel M>
std::pair<std::map<typename M::State, double>, double> predictedStateDistribution(
    const ExactBelief<typename M::State>& belief, ActionId action, const M& model) {
    std::map<typename M::State, double> pred;
    double endMass = 0.0;
    for (const auto& [s, p] : belief.probs) {
        if (p <= 0.0 || model.isTerminal(s)) continue;
        for (const auto& t : model.transitionDistribution(s, action)) {
            if (t.terminal)
                endMass += p * t.prob;
            else
                pred[t.next] += p * t.prob;
        }
    }
    return {std::move(pred), endMass};
}

/// Exact Bayes update b'(s') ∝ O(s', a, z) Σ_s T(s, a, s') b(s), conditioned
/// on the episode continuing (terminal successors are observed as game end,
/// not as a sensor reading). Throws ZeroEvidence when the observation has
/// zero predictive probability.
template <EnumerableModel M>
ExactBelief<typename M::State> exactUpdate(const ExactBelief<typename M::State>& belief,
                                           ActionId action, ObservationId obs, const M& model) {
    if (belief.empty()) throw EmptyBelief();
    auto [pred, endMass] = predictedStateDistribution(belief, action, model);
    (void)endMass;
    std::map<typename M::State, double> post;
    for (const auto& [s, p] : pred) {
        const double w = p * model.observationProb(s, action, obs);
        if (w > 0.0) post[s] += w;
    }
    if (post.empty()) throw ZeroEvidence();
    return ExactBelief<typename M::State>::fromMap(std::move(post));
}

/// Distribution of the next observation given (belief, action), alongside the
/// probability the episode ends on this step. Observation probabilities are
/// joint with survival, so obsProbs sums to 1 - endProb.
template <EnumerableModel M>
std::pair<std::vector<std::pair<ObservationId, double>>, double> predictedObservations(
    const ExactBelief<typename M::State>& belief, ActionId action, const M& model) {
    if (model.observationCount() < 0) throw UnenumerableDomain();
    auto [pred, endMass] = predictedStateDistribution(belief, action, model);
    std::vector<std::pair<ObservationId, double>> out;
    for (ObservationId z = 0; z < static_cast<ObservationId>(model.observationCount()); ++z) {
        double pz = 0.0;
        for (const auto& [s, p] : pred) pz += p * model.observationProb(s, action, z);
        if (pz > 0.0) out.emplace_back(z, pz);
    }
    return {std::move(out), endMass};
}

template <class M>
ParticleBelief<typename M::State> exactFallbackUpdate(
    const ParticleBelief<typename M::State>& belief, ActionId action, ObservationId obs,
    const M& model, RandomStream& rng, int n) {
    auto prior = exactFromParticles(belief, model);
    ExactBelief<typename M::State> posterior;
    try {
        posterior = exactUpdate(prior, action, obs, model);
    } catch (const ZeroEvidence&) {
        throw BeliefDepleted();  // the observation really is impossible from this prior
    }
    std::vector<typename M::State> states;
    std::vector<double> weights;
    for (auto& [s, p] : posterior.probs) {
        states.push_back(s);
        weights.push_back(p);
    }
    ParticleBelief<typename M::State> out;
    RandomStream pick = rng.child(0x45584143ull);
    out.particles = detail::systematicResample(states, weights, n, pick);
    return out;
}

}  // namespace cdp
