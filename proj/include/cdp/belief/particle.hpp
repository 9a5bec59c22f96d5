#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "cdp/core/errors.hpp"
#include "cdp/core/model.hpp"

namespace cdp {

/// Sampled posterior over domain states. Weights are optional; an empty
/// weight vector means uniform.
template <class State>
struct ParticleBelief {
    std::vector<State> particles;
    std::vector<double> weights;  // empty => uniform

    bool empty() const { return particles.empty(); }
    std::size_t size() const { return particles.size(); }

    double weightAt(std::size_t i) const {
        return weights.empty() ? 1.0 / static_cast<double>(particles.size()) : weights[i];
    }

    static ParticleBelief pointMass(State s) { return ParticleBelief{{std::move(s)}, {}}; }
};

/// Single weighted draw from the belief; deterministic given the stream.
template <class State>
const State& sampleState(const ParticleBelief<State>& belief, RandomStream& rng) {
    if (belief.empty()) throw EmptyBelief();
    if (belief.weights.empty()) {
        return belief.particles[rng.nextBelow(static_cast<std::uint32_t>(belief.size()))];
    }
    double total = 0.0;
    for (double w : belief.weights) total += w;
    double u = rng.nextUnit() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < belief.size(); ++i) {
        acc += belief.weights[i];
        if (u < acc) return belief.particles[i];
    }
    return belief.particles.back();
}

/// Probability mass on states satisfying `pred`.
template <class State, class Pred>
double beliefMarginal(const ParticleBelief<State>& belief, Pred&& pred) {
    if (belief.empty()) return 0.0;
    double total = 0.0;
    double hit = 0.0;
    for (std::size_t i = 0; i < belief.size(); ++i) {
        const double w = belief.weightAt(i);
        total += w;
        if (pred(belief.particles[i])) hit += w;
    }
    return total > 0.0 ? hit / total : 0.0;
}

/// Most likely state under the belief (mode by canonical serialization) and
/// its probability.
template <class State, GenerativeModel M>
std::pair<State, double> beliefMode(const ParticleBelief<State>& belief, const M& model) {
    std::map<std::string, std::pair<State, double>> mass;
    double total = 0.0;
    for (std::size_t i = 0; i < belief.size(); ++i) {
        const double w = belief.weightAt(i);
        total += w;
        auto key = model.serializeState(belief.particles[i]);
        auto [it, fresh] = mass.try_emplace(std::move(key), belief.particles[i], 0.0);
        it->second.second += w;
    }
    const std::pair<State, double>* best = nullptr;
    for (const auto& [k, v] : mass) {
        if (!best || v.second > best->second) best = &v;
    }
    return {best->first, best->second / total};
}

enum class ParticleUpdateMode {
    kAuto,        ///< likelihood weighting when the model supports it, else rejection
    kLikelihood,  ///< weight propagated particles by p(z | s', a)
    kRejection,   ///< keep particles whose sampled observation equals z
};

namespace detail {

/// Systematic resampling: one uniform offset, N evenly spaced positions.
template <class State>
std::vector<State> systematicResample(const std::vector<State>& particles,
                                      const std::vector<double>& weights, int n,
                                      RandomStream& rng) {
    double total = 0.0;
    for (double w : weights) total += w;
    std::vector<State> out;
    out.reserve(n);
    const double stride = total / n;
    double pos = rng.nextUnit() * stride;
    double acc = 0.0;
    std::size_t i = 0;
    for (int j = 0; j < n; ++j) {
        const double target = pos + j * stride;
        while (i + 1 < particles.size() && acc + weights[i] <= target) acc += weights[i++];
        out.push_back(particles[i]);
    }
    return out;
}

}  // namespace detail

template <class M>
ParticleBelief<typename M::State> particleBeliefFromDistribution(
    const M& model, const std::vector<WeightedState<typename M::State>>& dist, int n,
    RandomStream& rng) {
    (void)model;
    std::vector<typename M::State> states;
    std::vector<double> weights;
    for (const auto& ws : dist) {
        states.push_back(ws.state);
        weights.push_back(ws.weight);
    }
    if (states.empty()) throw EmptyBelief();
    ParticleBelief<typename M::State> out;
    out.particles = detail::systematicResample(states, weights, n, rng);
    return out;
}

/// Exact Bayes fallback used by the depletion policy; defined in exact.hpp.
template <class M>
ParticleBelief<typename M::State> exactFallbackUpdate(const ParticleBelief<typename M::State>&,
                                                      ActionId, ObservationId, const M&,
                                                      RandomStream&, int);

/// One particle-filter update step: propagate each source particle through
/// the model with an independent child stream, weight (or reject) against the
/// received observation, and systematic-resample back to `n` particles.
///
/// Particles that land on a terminal state get zero weight: a delivered
/// observation implies the episode is still running, which is itself
/// evidence. If, after the retry/oversampling depletion policy, nothing
/// survives, falls back to the exact filter for enumerable domains and
/// otherwise reports depletion.
template <GenerativeModel M>
ParticleBelief<typename M::State> particleUpdate(const ParticleBelief<typename M::State>& belief,
                                                 ActionId action, ObservationId obs,
                                                 const M& model, RandomStream& rng, int n,
                                                 ParticleUpdateMode mode = ParticleUpdateMode::kAuto) {
    using State = typename M::State;
    if (belief.empty()) throw EmptyBelief();
    if (n <= 0) throw DomainError("particle count must be positive");

    bool useLikelihood;
    if constexpr (ObservationModel<M>) {
        useLikelihood = mode != ParticleUpdateMode::kRejection;
    } else {
        if (mode == ParticleUpdateMode::kLikelihood)
            throw UnsupportedOperation("likelihood weighting: domain has no observationProb");
        useLikelihood = false;
    }

    constexpr double kDepletionThreshold = 1e-6;
    constexpr int kMaxRounds = 4;  // initial attempt + 3 oversampled retries

    for (int round = 0; round < kMaxRounds; ++round) {
        const int count = n << (2 * round);  // 4x oversampling per retry
        RandomStream roundStream = rng.child(0x50415254ull + round);
        std::vector<State> sources;
        {
            std::vector<State> states = belief.particles;
            std::vector<double> weights(belief.size());
            for (std::size_t i = 0; i < belief.size(); ++i) weights[i] = belief.weightAt(i);
            RandomStream pick = roundStream.child(0);
            sources = detail::systematicResample(states, weights, count, pick);
        }

        std::vector<State> propagated;
        std::vector<double> weights;
        propagated.reserve(count);
        weights.reserve(count);
        double total = 0.0;
        for (int j = 0; j < count; ++j) {
            if (model.isTerminal(sources[j])) continue;
            RandomStream particleStream = roundStream.child(1 + j);
            auto out = model.step(sources[j], action, particleStream);
            double w;
            if (out.terminal) {
                w = 0.0;
            } else if (useLikelihood) {
                if constexpr (ObservationModel<M>) {
                    w = model.observationProb(out.next, action, obs);
                } else {
                    w = 0.0;
                }
            } else {
                w = out.observation == obs ? 1.0 : 0.0;
            }
            if (w > 0.0) {
                propagated.push_back(std::move(out.next));
                weights.push_back(w);
                total += w;
            }
        }

        if (total >= kDepletionThreshold) {
            ParticleBelief<State> posterior;
            RandomStream pick = roundStream.child(0x52455341ull);
            posterior.particles = detail::systematicResample(propagated, weights, n, pick);
            return posterior;
        }
    }

    if constexpr (EnumerableModel<M>) {
        return exactFallbackUpdate(belief, action, obs, model, rng, n);
    } else {
        throw BeliefDepleted();
    }
}

}  // namespace cdp
