#include "cdp/oracle/policy_graph.hpp"

#include <cstdarg>
#include <cstdio>

namespace cdp {

namespace {

void appendf(std::string& out, const char* fmt, ...) {
    char buf[256];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    out += buf;
}

}  // namespace

std::string emitDot(const PolicyGraph& graph) {
    std::string out;
    out += "digraph policy {\n";
    out += "  rankdir=LR;\n";
    out += "  node [shape=box];\n";
    for (const auto& n : graph.nodes) {
        if (n.endNode) {
            appendf(out, "  n%d [label=\"end\" shape=doublecircle];\n", n.id);
        } else {
            appendf(out, "  n%d [label=\"%s p=%.6f\\n%s\"];\n", n.id, n.stateLabel.c_str(),
                    n.stateProb, n.actionLabel.c_str());
        }
    }
    for (const auto& e : graph.edges) {
        appendf(out, "  n%d -> n%d [label=\"%s (%.6f)\"];\n", e.from, e.to, e.obsLabel.c_str(),
                e.prob);
    }
    if (graph.truncated) out += "  // truncated at node budget\n";
    out += "}\n";
    return out;
}

}  // namespace cdp
