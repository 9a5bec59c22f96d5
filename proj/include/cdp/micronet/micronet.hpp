#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdp/core/errors.hpp"
#include "cdp/core/model.hpp"
#include "cdp/core/random.hpp"
#include "cdp/core/types.hpp"

namespace cdp {

/// Compromise state of the 4-node micro network, one bit per node in the
/// fixed order m1 m2 t1 t2 (m1 is the most significant bit of the encoding,
/// so the canonical text rendering "1010" is also the binary numeral).
struct MicroState {
    std::uint8_t bits = 0;

    static constexpr std::uint8_t kM1 = 1u << 3;
    static constexpr std::uint8_t kM2 = 1u << 2;
    static constexpr std::uint8_t kT1 = 1u << 1;
    static constexpr std::uint8_t kT2 = 1u << 0;

    bool m1() const { return bits & kM1; }
    bool m2() const { return bits & kM2; }
    bool t1() const { return bits & kT1; }
    bool t2() const { return bits & kT2; }
    bool node(int i) const { return bits & (1u << (3 - i)); }  // i in [0,4): m1,m2,t1,t2

    /// A state is terminal as soon as either target is compromised.
    bool terminal() const { return bits & (kT1 | kT2); }

    friend auto operator<=>(const MicroState&, const MicroState&) = default;
};

enum MicroAction : ActionId {
    kMicroNop = 0,
    kMicroResetM1 = 1,
    kMicroResetM2 = 2,
    kMicroResetAll = 3,
};

struct MicroConfig {
    double fpr = 0.0;   ///< P(clean node reports "bad")
    double fnr = 0.0;   ///< P(compromised node reports "good")
    double pNil = 0.9;  ///< P(attacker idles this step)
    double pSucc = 1.0; ///< P(an attack attempt succeeds)
    double stepReward = 10.0;
    double terminalPenalty = -800.0;
    double surgicalCost = -30.0;
    double globalCost = -50.0;
    double discount = 0.95;

    void validate() const;
};

/// Rollout policy used for planner lower bounds: reset-all every `period`
/// steps (default every step), NOP otherwise.
struct MicroRolloutPolicy {
    int period = 1;
    ActionId operator()(const std::optional<ObservationId>&, int stepIndex) const {
        return (period <= 1 || stepIndex % period == 0) ? kMicroResetAll : kMicroNop;
    }
};

/// The 4-node micro-network POMDP: two middle nodes shielding two targets,
/// a greedy dwelling attacker, independent noisy per-node sensors, and the
/// {+10, -800, -30, -50} reward structure.
///
/// Step order is fixed: defender action (reset nodes are blocked for the
/// step), attacker move, sensor sampling, reward.
class MicroNetModel {
  public:
    using State = MicroState;

    explicit MicroNetModel(MicroConfig cfg);

    const ProblemSpec& spec() const { return spec_; }
    const MicroConfig& config() const { return cfg_; }

    StepOutcome<State> step(const State& s, ActionId a, RandomStream& rng) const;
    /// As step() but with the attacker's idle draw resolved to "act"; used by
    /// the macro-action wrapper, which samples the dwell length itself.
    StepOutcome<State> stepActive(const State& s, ActionId a, RandomStream& rng) const;

    bool isTerminal(const State& s) const { return s.terminal(); }
    ActionId nopAction() const { return kMicroNop; }

    double observationProb(const State& postState, ActionId a, ObservationId z) const;
    std::vector<Transition<State>> transitionDistribution(const State& s, ActionId a) const;
    std::int64_t observationCount() const { return 16; }

    /// All 16 states in ascending encoding order (0000 .. 1111).
    static std::vector<State> enumerateStates();

    std::vector<WeightedState<State>> initialDistribution() const;

    // Dwell introspection for macro-actions. Quiescent = no foothold yet, so
    // the attacker's first overt move cannot enter a terminal state.
    bool isQuiescent(const State& s) const { return s.bits == 0; }
    double idleContinueProb() const { return cfg_.pNil; }
    double idleStepReward() const { return cfg_.stepReward; }
    ObservationId idleObservation(const State& s, RandomStream& rng) const;

    /// Exact value of the fully observed MDP at the given horizon; an upper
    /// bound on the POMDP value from any belief over these states.
    double hindsightValue(const State& s, int horizon) const;

    MicroRolloutPolicy makeRolloutPolicy() const { return MicroRolloutPolicy{}; }

    std::string serializeState(const State& s) const { return renderState(s); }
    std::string renderState(const State& s) const;
    std::string renderObservation(ObservationId z) const;
    std::string actionName(ActionId a) const;
    static std::optional<State> parseState(const std::string& bits);

  private:
    StepOutcome<State> stepImpl(const State& s, ActionId a, RandomStream& rng,
                                bool forceActive) const;
    double stepRewardFor(ActionId a, bool terminal) const;

    static constexpr int kHindsightHorizonCap = 128;

    MicroConfig cfg_;
    ProblemSpec spec_;
    // mdpValue_[h][state]: exact fully-observed value at horizon h.
    std::vector<std::array<double, 16>> mdpValue_;
};

}  // namespace cdp
