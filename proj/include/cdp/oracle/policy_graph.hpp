#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "cdp/belief/exact.hpp"
#include "cdp/core/model.hpp"

namespace cdp {

/// Finite-state summary of a policy over exact-filtered beliefs. Each node is
/// a distinct belief (merged under the quantization tolerance) labeled with
/// the most likely state, its probability, and the policy's action. Edges
/// carry observations and their probabilities; when the episode can end from
/// a node, the residual mass flows to a single absorbing "end" node so that
/// outgoing probabilities sum to one.
struct PolicyGraph {
    struct Node {
        int id = 0;
        std::string stateLabel;
        double stateProb = 0.0;
        ActionId action = 0;
        std::string actionLabel;
        bool endNode = false;
        bool frontier = false;  ///< reached but not expanded (graph truncated)
    };
    struct Edge {
        int from = 0;
        int to = 0;
        std::string obsLabel;
        double prob = 0.0;
    };

    std::vector<Node> nodes;
    std::vector<Edge> edges;
    bool truncated = false;
};

/// Deterministic DOT rendering; node order follows node ids, so equal graphs
/// produce byte-identical text.
std::string emitDot(const PolicyGraph& graph);

inline constexpr double kBeliefMergeTolerance = 1e-6;

namespace detail {

template <class State, class M>
std::string quantizedBeliefKey(const ExactBelief<State>& b, const M& model) {
    std::string key;
    char buf[32];
    for (const auto& [s, p] : b.probs) {
        const auto q = static_cast<long long>(p / kBeliefMergeTolerance + 0.5);
        if (q == 0) continue;
        key += model.serializeState(s);
        std::snprintf(buf, sizeof(buf), ":%lld|", q);
        key += buf;
    }
    return key;
}

}  // namespace detail

/// Breadth-first closure over the exact-filtered beliefs reachable under the
/// agent's action choices. `agent` is any deterministic belief -> action map.
/// Stops expanding once `maxNodes` distinct beliefs exist; the result is then
/// flagged truncated and unexpanded nodes keep their action label but have no
/// outgoing edges.
template <EnumerableModel M, class Agent>
PolicyGraph extractPolicyGraph(const M& model, Agent&& agent,
                               const ExactBelief<typename M::State>& initialBelief,
                               int maxNodes) {
    using State = typename M::State;
    if (model.observationCount() < 0) throw UnenumerableDomain();

    PolicyGraph graph;
    std::map<std::string, int> ids;
    std::deque<std::pair<ExactBelief<State>, int>> frontier;
    int endNodeId = -1;

    auto internNode = [&](const ExactBelief<State>& b) {
        auto key = detail::quantizedBeliefKey(b, model);
        auto it = ids.find(key);
        if (it != ids.end()) return std::pair<int, bool>{it->second, false};
        const int id = static_cast<int>(graph.nodes.size());
        ids.emplace(std::move(key), id);
        PolicyGraph::Node node;
        node.id = id;
        auto [state, prob] = b.mode();
        node.stateLabel = model.renderState(state);
        node.stateProb = prob;
        node.action = agent(b);
        node.actionLabel = model.actionName(node.action);
        node.frontier = true;
        graph.nodes.push_back(std::move(node));
        frontier.emplace_back(b, id);
        return std::pair<int, bool>{id, true};
    };

    auto endNode = [&]() {
        if (endNodeId < 0) {
            endNodeId = static_cast<int>(graph.nodes.size());
            PolicyGraph::Node node;
            node.id = endNodeId;
            node.stateLabel = "terminal";
            node.actionLabel = "-";
            node.endNode = true;
            graph.nodes.push_back(std::move(node));
            graph.edges.push_back({endNodeId, endNodeId, "end", 1.0});
        }
        return endNodeId;
    };

    internNode(initialBelief);
    while (!frontier.empty()) {
        auto [belief, id] = frontier.front();
        frontier.pop_front();
        if (static_cast<int>(graph.nodes.size()) > maxNodes) {
            graph.truncated = true;
            break;
        }
        graph.nodes[id].frontier = false;
        const ActionId action = graph.nodes[id].action;
        auto [obsDist, endMass] = predictedObservations(belief, action, model);
        for (const auto& [z, pz] : obsDist) {
            auto posterior = exactUpdate(belief, action, z, model);
            auto [to, fresh] = internNode(posterior);
            graph.edges.push_back({id, to, model.renderObservation(z), pz});
        }
        if (endMass > 1e-12) graph.edges.push_back({id, endNode(), "end", endMass});
    }
    for (const auto& [b, id] : frontier) graph.nodes[id].frontier = true;

    return graph;
}

}  // namespace cdp
