#pragma once

#include <cstdio>
#include <string>
#include <unordered_map>
#include <vector>

#include "cdp/belief/exact.hpp"
#include "cdp/core/errors.hpp"
#include "cdp/core/model.hpp"

namespace cdp {

struct ExactValueResult {
    double value = 0.0;
    ActionId action = 0;
};

inline constexpr int kDefaultHorizonCap = 4;

namespace detail {

template <class State, class M>
std::string beliefKey(const ExactBelief<State>& b, const M& model, int horizon) {
    std::string key = std::to_string(horizon);
    char buf[32];
    for (const auto& [s, p] : b.probs) {
        key += '|';
        key += model.serializeState(s);
        std::snprintf(buf, sizeof(buf), ":%.12e", p);
        key += buf;
    }
    return key;
}

}  // namespace detail

/// Exact finite-horizon expectimax over the belief tree:
///   V_0 = 0;  V_h(b) = max_a [ E_b R(s,a) + gamma * sum_z p(z|b,a) V_{h-1}(b_z^a) ]
/// skipping zero-probability observations, ties broken by lowest action id.
/// Terminal successors contribute their entry reward but no continuation.
template <EnumerableModel M>
ExactValueResult exactValue(const ExactBelief<typename M::State>& belief, const M& model,
                            int horizon, int horizonCap = kDefaultHorizonCap) {
    if (belief.empty()) throw EmptyBelief();
    if (model.observationCount() < 0) throw UnenumerableDomain();
    if (horizon < 0) throw DomainError("horizon must be nonnegative");
    if (horizon > horizonCap) throw HorizonTooDeep(horizon, horizonCap);

    const double gamma = model.spec().discount;
    const int actionCount = model.spec().actionCount;
    std::unordered_map<std::string, ExactValueResult> memo;

    auto solve = [&](auto&& self, const ExactBelief<typename M::State>& b,
                     int h) -> ExactValueResult {
        if (h == 0) return {0.0, model.nopAction()};
        auto key = detail::beliefKey(b, model, h);
        if (auto it = memo.find(key); it != memo.end()) return it->second;

        ExactValueResult best{0.0, 0};
        bool first = true;
        for (ActionId a = 0; a < actionCount; ++a) {
            double q = 0.0;
            // expected immediate reward and the predicted successor split
            std::map<typename M::State, double> pred;
            for (const auto& [s, p] : b.probs) {
                if (p <= 0.0 || model.isTerminal(s)) continue;
                for (const auto& t : model.transitionDistribution(s, a)) {
                    q += p * t.prob * t.reward;
                    if (!t.terminal) pred[t.next] += p * t.prob;
                }
            }
            if (h > 1 && !pred.empty()) {
                for (ObservationId z = 0; z < static_cast<ObservationId>(model.observationCount());
                     ++z) {
                    double pz = 0.0;
                    std::map<typename M::State, double> post;
                    for (const auto& [s, p] : pred) {
                        const double w = p * model.observationProb(s, a, z);
                        if (w > 0.0) {
                            pz += w;
                            post[s] += w;
                        }
                    }
                    if (pz <= 0.0) continue;
                    ExactBelief<typename M::State> bz;
                    bz.probs.assign(post.begin(), post.end());
                    for (auto& [s, p] : bz.probs) p /= pz;
                    q += gamma * pz * self(self, bz, h - 1).value;
                }
            } else if (h > 1) {
                // all mass terminal: no continuation
            } else {
                // h == 1: continuation value is zero by definition
            }
            if (first || q > best.value + 1e-12) {
                best = {q, a};
                first = false;
            }
        }
        memo.emplace(std::move(key), best);
        return best;
    };

    return solve(solve, belief, horizon);
}

}  // namespace cdp
