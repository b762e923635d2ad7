#include "hrgen/dot.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace hrgen {

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out.push_back('\\');
        }
        out.push_back(c);
    }
    return out + "\"";
}

}  // namespace

std::string to_dot(const Hypergraph& graph, const std::string& name) {
    std::map<NodeId, std::size_t> ext_position;
    for (std::size_t i = 0; i < graph.ext().size(); ++i) {
        ext_position.emplace(graph.ext()[i], i + 1);
    }
    std::vector<NodeId> nodes = graph.nodes();
    std::sort(nodes.begin(), nodes.end());
    std::vector<const Edge*> edges;
    for (const auto& e : graph.edges()) {
        edges.push_back(&e);
    }
    std::sort(edges.begin(), edges.end(), [](const Edge* a, const Edge* b) { return a->id < b->id; });

    std::ostringstream out;
    out << "graph " << quoted(name) << " {\n";
    out << "  node [fontsize=10];\n";
    for (NodeId v : nodes) {
        out << "  v" << v.value << " [shape=point, width=0.08";
        if (auto it = ext_position.find(v); it != ext_position.end()) {
            out << ", xlabel=\"ext:" << it->second << "\"";
        }
        out << "];\n";
    }
    for (const Edge* e : edges) {
        out << "  e" << e->id.value << " [shape=box, label=" << quoted(e->label) << "];\n";
        for (std::size_t i = 0; i < e->att.size(); ++i) {
            out << "  e" << e->id.value << " -- v" << e->att[i].value << " [label=\"" << i + 1 << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace hrgen
