#include "cdp/micronet/micronet.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace cdp {

namespace {

bool isProb(double p) { return p >= 0.0 && p <= 1.0; }

constexpr const char* kActionNames[4] = {"NOP", "Rm1", "Rm2", "RA"};

std::string bitsToString(std::uint8_t bits) {
    std::string out(4, '0');
    for (int i = 0; i < 4; ++i)
        if (bits & (1u << (3 - i))) out[i] = '1';
    return out;
}

}  // namespace

void MicroConfig::validate() const {
    if (!isProb(fpr) || !isProb(fnr) || !isProb(pNil) || !isProb(pSucc))
        throw DomainError("micro-net probabilities must lie in [0, 1]");
    if (!(terminalPenalty < 0.0) || !(stepReward >= 0.0))
        throw DomainError("micro-net requires terminalPenalty < 0 <= stepReward");
    if (!(discount > 0.0) || discount > 1.0)
        throw DomainError("discount must lie in (0, 1]");
}

MicroNetModel::MicroNetModel(MicroConfig cfg) : cfg_(cfg) {
    cfg_.validate();
    spec_.discount = cfg_.discount;
    spec_.actionCount = 4;
    spec_.observationCount = 16;
    spec_.rewardMax = cfg_.stepReward;
    spec_.rewardMin = cfg_.globalCost + cfg_.terminalPenalty;

    // Exact fully observed finite-horizon values, V[0] = 0. Terminal states
    // stay at 0 (absorbing).
    mdpValue_.assign(kHindsightHorizonCap + 1, {});
    for (int h = 1; h <= kHindsightHorizonCap; ++h) {
        for (int sBits = 0; sBits < 16; ++sBits) {
            State s{static_cast<std::uint8_t>(sBits)};
            if (s.terminal()) continue;
            double best = -std::numeric_limits<double>::infinity();
            for (ActionId a = 0; a < 4; ++a) {
                double q = 0.0;
                for (const auto& t : transitionDistribution(s, a)) {
                    q += t.prob * (t.reward +
                                   (t.terminal ? 0.0 : cfg_.discount * mdpValue_[h - 1][t.next.bits]));
                }
                best = std::max(best, q);
            }
            mdpValue_[h][sBits] = best;
        }
    }
}

double MicroNetModel::stepRewardFor(ActionId a, bool terminal) const {
    double cost = 0.0;
    if (a == kMicroResetM1 || a == kMicroResetM2) cost = cfg_.surgicalCost;
    if (a == kMicroResetAll) cost = cfg_.globalCost;
    return cost + (terminal ? cfg_.terminalPenalty : cfg_.stepReward);
}

StepOutcome<MicroState> MicroNetModel::step(const State& s, ActionId a, RandomStream& rng) const {
    return stepImpl(s, a, rng, /*forceActive=*/false);
}

StepOutcome<MicroState> MicroNetModel::stepActive(const State& s, ActionId a,
                                                  RandomStream& rng) const {
    return stepImpl(s, a, rng, /*forceActive=*/true);
}

StepOutcome<MicroState> MicroNetModel::stepImpl(const State& s, ActionId a, RandomStream& rng,
                                                bool forceActive) const {
    if (s.terminal()) throw StepOnTerminal();
    if (a < 0 || a >= 4) throw InvalidAction(a, 4);

    State next = s;
    std::uint8_t blocked = 0;  // nodes reset this step; attacker cannot touch them
    switch (a) {
        case kMicroResetM1:
            next.bits &= ~MicroState::kM1;
            blocked = MicroState::kM1;
            break;
        case kMicroResetM2:
            next.bits &= ~MicroState::kM2;
            blocked = MicroState::kM2;
            break;
        case kMicroResetAll:
            next.bits = 0;
            blocked = MicroState::kM1 | MicroState::kM2 | MicroState::kT1 | MicroState::kT2;
            break;
        default:
            break;
    }

    // Attacker move. Escalate from a compromised middle node if possible,
    // otherwise expand onto an uncompromised middle node; ties between the
    // two lanes break uniformly from the stream.
    bool idle = forceActive ? false : rng.nextBool(cfg_.pNil);
    if (!idle) {
        const std::uint8_t mBit[2] = {MicroState::kM1, MicroState::kM2};
        const std::uint8_t tBit[2] = {MicroState::kT1, MicroState::kT2};
        int escal[2];
        int nEscal = 0;
        for (int i = 0; i < 2; ++i) {
            if ((next.bits & mBit[i]) && !(blocked & mBit[i]) && !(blocked & tBit[i]) &&
                !(next.bits & tBit[i]))
                escal[nEscal++] = i;
        }
        if (nEscal > 0) {
            int lane = escal[0];
            if (nEscal == 2) lane = rng.nextUnit() < 0.5 ? 0 : 1;
            if (rng.nextBool(cfg_.pSucc)) next.bits |= tBit[lane];
        } else {
            int expand[2];
            int nExpand = 0;
            for (int i = 0; i < 2; ++i) {
                if (!(next.bits & mBit[i]) && !(blocked & mBit[i])) expand[nExpand++] = i;
            }
            if (nExpand > 0) {
                int lane = expand[0];
                if (nExpand == 2) lane = rng.nextUnit() < 0.5 ? 0 : 1;
                if (rng.nextBool(cfg_.pSucc)) next.bits |= mBit[lane];
            }
            // No reachable node: the attacker stalls this step.
        }
    }

    StepOutcome<State> out;
    out.next = next;
    out.observation = idleObservation(next, rng);
    out.terminal = next.terminal();
    out.reward = stepRewardFor(a, out.terminal);
    return out;
}

ObservationId MicroNetModel::idleObservation(const State& s, RandomStream& rng) const {
    // One fresh sensor sample per node, order m1 m2 t1 t2.
    ObservationId z = 0;
    for (int i = 0; i < 4; ++i) {
        const bool comp = s.node(i);
        const double pBad = comp ? 1.0 - cfg_.fnr : cfg_.fpr;
        if (rng.nextBool(pBad)) z |= (1u << (3 - i));
    }
    return z;
}

double MicroNetModel::observationProb(const State& postState, ActionId, ObservationId z) const {
    if (z >= 16) return 0.0;
    double p = 1.0;
    for (int i = 0; i < 4; ++i) {
        const bool comp = postState.node(i);
        const bool bad = z & (1u << (3 - i));
        const double pBad = comp ? 1.0 - cfg_.fnr : cfg_.fpr;
        p *= bad ? pBad : 1.0 - pBad;
    }
    return p;
}

std::vector<Transition<MicroState>> MicroNetModel::transitionDistribution(const State& s,
                                                                          ActionId a) const {
    if (s.terminal()) throw StepOnTerminal();
    if (a < 0 || a >= 4) throw InvalidAction(a, 4);

    State base = s;
    std::uint8_t blocked = 0;
    switch (a) {
        case kMicroResetM1:
            base.bits &= ~MicroState::kM1;
            blocked = MicroState::kM1;
            break;
        case kMicroResetM2:
            base.bits &= ~MicroState::kM2;
            blocked = MicroState::kM2;
            break;
        case kMicroResetAll:
            base.bits = 0;
            blocked = 0x0F;
            break;
        default:
            break;
    }

    std::map<std::uint8_t, double> mass;
    auto add = [&](std::uint8_t bits, double p) {
        if (p > 0.0) mass[bits] += p;
    };

    add(base.bits, cfg_.pNil);  // attacker idles
    const double pAct = 1.0 - cfg_.pNil;
    if (pAct > 0.0) {
        const std::uint8_t mBit[2] = {MicroState::kM1, MicroState::kM2};
        const std::uint8_t tBit[2] = {MicroState::kT1, MicroState::kT2};
        int cand[2];
        int n = 0;
        bool escalating = false;
        for (int i = 0; i < 2; ++i) {
            if ((base.bits & mBit[i]) && !(blocked & mBit[i]) && !(blocked & tBit[i]) &&
                !(base.bits & tBit[i]))
                cand[n++] = i;
        }
        if (n > 0) {
            escalating = true;
        } else {
            for (int i = 0; i < 2; ++i)
                if (!(base.bits & mBit[i]) && !(blocked & mBit[i])) cand[n++] = i;
        }
        if (n == 0) {
            add(base.bits, pAct);  // stalled
        } else {
            const double perLane = pAct / n;
            for (int j = 0; j < n; ++j) {
                const std::uint8_t hit = escalating ? tBit[cand[j]] : mBit[cand[j]];
                add(static_cast<std::uint8_t>(base.bits | hit), perLane * cfg_.pSucc);
                add(base.bits, perLane * (1.0 - cfg_.pSucc));
            }
        }
    }

    std::vector<Transition<State>> out;
    out.reserve(mass.size());
    for (const auto& [bits, p] : mass) {
        Transition<State> t;
        t.next = State{bits};
        t.prob = p;
        t.terminal = t.next.terminal();
        t.reward = stepRewardFor(a, t.terminal);
        out.push_back(t);
    }
    return out;
}

std::vector<MicroState> MicroNetModel::enumerateStates() {
    std::vector<State> all;
    all.reserve(16);
    for (int b = 0; b < 16; ++b) all.push_back(State{static_cast<std::uint8_t>(b)});
    return all;
}

std::vector<WeightedState<MicroState>> MicroNetModel::initialDistribution() const {
    return {WeightedState<State>{State{0}, 1.0}};
}

double MicroNetModel::hindsightValue(const State& s, int horizon) const {
    if (horizon <= 0 || s.terminal()) return 0.0;
    const int h = std::min(horizon, kHindsightHorizonCap);
    double v = mdpValue_[h][s.bits];
    if (horizon > kHindsightHorizonCap && cfg_.discount < 1.0) {
        // Tail slack keeps the bound valid past the precomputed cap.
        double gn = 1.0;
        for (int i = 0; i < kHindsightHorizonCap; ++i) gn *= cfg_.discount;
        v += gn * std::max(0.0, spec_.rewardMax) / (1.0 - cfg_.discount);
    }
    return v;
}

std::string MicroNetModel::renderState(const State& s) const { return bitsToString(s.bits); }

std::string MicroNetModel::renderObservation(ObservationId z) const {
    return bitsToString(static_cast<std::uint8_t>(z & 0x0F));
}

std::string MicroNetModel::actionName(ActionId a) const {
    if (a < 0 || a >= 4) throw InvalidAction(a, 4);
    return kActionNames[a];
}

std::optional<MicroState> MicroNetModel::parseState(const std::string& bits) {
    if (bits.size() != 4) return std::nullopt;
    std::uint8_t v = 0;
    for (int i = 0; i < 4; ++i) {
        if (bits[i] == '1')
            v |= (1u << (3 - i));
        else if (bits[i] != '0')
            return std::nullopt;
    }
    return MicroState{v};
}

}  // namespace cdp
