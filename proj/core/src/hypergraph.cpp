#include "hrgen/hypergraph.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "hrgen/error.hpp"

namespace hrgen {

namespace {

std::string node_name(NodeId id) { return "v" + std::to_string(id.value); }
std::string edge_name(EdgeId id) { return "e" + std::to_string(id.value); }

// Maps host node ids to their positions; the host must be well formed
// enough for replacement (unique node ids, no dangling references).
std::unordered_map<NodeId, std::uint32_t> index_nodes(const Hypergraph& graph) {
    std::unordered_map<NodeId, std::uint32_t> index;
    index.reserve(graph.node_count());
    for (std::uint32_t i = 0; i < graph.node_count(); ++i) {
        if (!index.emplace(graph.nodes()[i], i).second) {
            throw InputError("duplicate node id " + node_name(graph.nodes()[i]));
        }
    }
    return index;
}

std::uint32_t lookup(const std::unordered_map<NodeId, std::uint32_t>& index, NodeId id) {
    auto it = index.find(id);
    if (it == index.end()) {
        throw InputError("reference to unknown node " + node_name(id));
    }
    return it->second;
}

}  // namespace

bool has_violation(std::span<const Violation> violations, std::string_view code) {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.code == code; });
}

TypingFunction::TypingFunction(std::initializer_list<std::pair<const Symbol, std::size_t>> entries)
    : arity_(entries) {}

void TypingFunction::set(const Symbol& label, std::size_t arity) { arity_[label] = arity; }

bool TypingFunction::defines(const Symbol& label) const { return arity_.contains(label); }

std::optional<std::size_t> TypingFunction::arity(const Symbol& label) const {
    auto it = arity_.find(label);
    if (it == arity_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::size_t TypingFunction::at(const Symbol& label) const {
    auto it = arity_.find(label);
    if (it == arity_.end()) {
        throw InputError("unknown label '" + label + "'");
    }
    return it->second;
}

Hypergraph::Hypergraph(std::vector<NodeId> nodes, std::vector<Edge> edges, std::vector<NodeId> ext)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), ext_(std::move(ext)) {}

std::size_t Hypergraph::internal_node_count() const {
    std::unordered_set<NodeId> external(ext_.begin(), ext_.end());
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(),
                                                  [&](NodeId v) { return !external.contains(v); }));
}

const Edge* Hypergraph::find_edge(EdgeId id) const noexcept {
    auto it = std::find_if(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.id == id; });
    return it == edges_.end() ? nullptr : &*it;
}

std::size_t Hypergraph::edge_position(EdgeId id) const {
    auto it = std::find_if(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.id == id; });
    if (it == edges_.end()) {
        throw InputError("no edge " + edge_name(id));
    }
    return static_cast<std::size_t>(it - edges_.begin());
}

Hypergraph make_hypergraph(std::size_t node_count, std::vector<EdgeSpec> edges,
                           std::vector<std::uint32_t> ext) {
    std::vector<NodeId> nodes(node_count);
    for (std::uint32_t i = 0; i < node_count; ++i) {
        nodes[i] = NodeId{i};
    }
    std::vector<Edge> built;
    built.reserve(edges.size());
    for (std::uint32_t i = 0; i < edges.size(); ++i) {
        std::vector<NodeId> att;
        att.reserve(edges[i].att.size());
        for (auto v : edges[i].att) {
            att.push_back(NodeId{v});
        }
        built.push_back(Edge{EdgeId{i}, std::move(edges[i].label), std::move(att)});
    }
    std::vector<NodeId> external;
    external.reserve(ext.size());
    for (auto v : ext) {
        external.push_back(NodeId{v});
    }
    return Hypergraph(std::move(nodes), std::move(built), std::move(external));
}

std::vector<Violation> validate(const Hypergraph& graph, const TypingFunction& typing) {
    std::vector<Violation> out;

    std::unordered_set<NodeId> nodes;
    for (NodeId v : graph.nodes()) {
        if (!nodes.insert(v).second) {
            out.push_back({"duplicate-node-id", "node " + node_name(v) + " listed more than once"});
        }
    }

    std::unordered_set<EdgeId> edge_ids;
    for (const Edge& e : graph.edges()) {
        if (!edge_ids.insert(e.id).second) {
            out.push_back({"duplicate-edge-id", "edge " + edge_name(e.id) + " listed more than once"});
        }
        for (NodeId v : e.att) {
            if (!nodes.contains(v)) {
                out.push_back({"dangling-attachment",
                               "edge " + edge_name(e.id) + " attaches unknown node " + node_name(v)});
            }
        }
        auto arity = typing.arity(e.label);
        if (!arity) {
            out.push_back({"unknown-label", "edge " + edge_name(e.id) + " has untyped label '" + e.label + "'"});
        } else if (*arity != e.att.size()) {
            out.push_back({"arity-mismatch", "edge " + edge_name(e.id) + " labeled '" + e.label + "' has " +
                                                 std::to_string(e.att.size()) + " attachments, type is " +
                                                 std::to_string(*arity)});
        }
    }

    std::unordered_set<NodeId> seen_ext;
    for (NodeId v : graph.ext()) {
        if (!nodes.contains(v)) {
            out.push_back({"dangling-external", "external node " + node_name(v) + " is not a node"});
        }
        if (!seen_ext.insert(v).second) {
            out.push_back({"duplicate-external-node", "node " + node_name(v) + " is external more than once"});
        }
    }
    return out;
}

Hypergraph handle(const Symbol& label, const TypingFunction& typing) { return handle(label, typing.at(label)); }

Hypergraph handle(const Symbol& label, std::size_t arity) {
    std::vector<std::uint32_t> att(arity);
    for (std::uint32_t i = 0; i < arity; ++i) {
        att[i] = i;
    }
    return make_hypergraph(arity, {EdgeSpec{label, att}}, att);
}

Hypergraph replace_all(const Hypergraph& host, std::span<const EdgeReplacement> assignment) {
    std::unordered_map<EdgeId, const Hypergraph*> pending;
    pending.reserve(assignment.size());
    for (const auto& r : assignment) {
        if (r.graph == nullptr) {
            throw InputError("null replacement for edge " + edge_name(r.edge));
        }
        if (!pending.emplace(r.edge, r.graph).second) {
            throw InputError("edge " + edge_name(r.edge) + " assigned twice");
        }
    }

    const auto host_index = index_nodes(host);
    std::uint32_t next_node = static_cast<std::uint32_t>(host.node_count());
    std::vector<Edge> edges;
    edges.reserve(host.edge_count());

    auto push_edge = [&](const Symbol& label, std::vector<NodeId> att) {
        edges.push_back(Edge{EdgeId{static_cast<std::uint32_t>(edges.size())}, label, std::move(att)});
    };

    std::size_t consumed = 0;
    for (const Edge& e : host.edges()) {
        std::vector<NodeId> att;
        att.reserve(e.att.size());
        for (NodeId v : e.att) {
            att.push_back(NodeId{lookup(host_index, v)});
        }

        auto it = pending.find(e.id);
        if (it == pending.end()) {
            push_edge(e.label, std::move(att));
            continue;
        }
        ++consumed;
        const Hypergraph& repl = *it->second;
        if (repl.type() != att.size()) {
            throw InputError("type mismatch replacing edge " + edge_name(e.id) + ": edge has " +
                             std::to_string(att.size()) + " attachments, replacement has type " +
                             std::to_string(repl.type()));
        }

        // ext_R[i] is fused with att(e)[i]; the other nodes of R are fresh.
        std::unordered_map<NodeId, NodeId> fused;
        fused.reserve(repl.node_count());
        for (std::size_t i = 0; i < repl.ext().size(); ++i) {
            if (!fused.emplace(repl.ext()[i], att[i]).second) {
                throw InputError("replacement for edge " + edge_name(e.id) + " has a repeated external node");
            }
        }
        for (NodeId v : repl.nodes()) {
            if (!fused.contains(v)) {
                fused.emplace(v, NodeId{next_node++});
            }
        }
        for (const Edge& re : repl.edges()) {
            std::vector<NodeId> ratt;
            ratt.reserve(re.att.size());
            for (NodeId v : re.att) {
                auto f = fused.find(v);
                if (f == fused.end()) {
                    throw InputError("replacement edge " + edge_name(re.id) + " attaches unknown node " +
                                     node_name(v));
                }
                ratt.push_back(f->second);
            }
            push_edge(re.label, std::move(ratt));
        }
    }
    if (consumed != pending.size()) {
        for (const auto& [id, graph] : pending) {
            if (host.find_edge(id) == nullptr) {
                throw InputError("no edge " + edge_name(id) + " in host graph");
            }
        }
    }

    std::vector<NodeId> nodes(next_node);
    for (std::uint32_t i = 0; i < next_node; ++i) {
        nodes[i] = NodeId{i};
    }
    std::vector<NodeId> ext;
    ext.reserve(host.type());
    for (NodeId v : host.ext()) {
        ext.push_back(NodeId{lookup(host_index, v)});
    }
    return Hypergraph(std::move(nodes), std::move(edges), std::move(ext));
}

Hypergraph replace_all(const Hypergraph& host, const std::map<EdgeId, Hypergraph>& assignment) {
    std::vector<EdgeReplacement> flat;
    flat.reserve(assignment.size());
    for (const auto& [edge, graph] : assignment) {
        flat.push_back({edge, &graph});
    }
    return replace_all(host, flat);
}

Hypergraph replace(const Hypergraph& host, EdgeId edge, const Hypergraph& replacement) {
    const EdgeReplacement single{edge, &replacement};
    return replace_all(host, std::span<const EdgeReplacement>(&single, 1));
}

Hypergraph remove_edges(const Hypergraph& graph, std::span<const EdgeId> edges) {
    std::unordered_set<EdgeId> drop(edges.begin(), edges.end());
    std::vector<Edge> kept;
    kept.reserve(graph.edge_count());
    for (const Edge& e : graph.edges()) {
        if (!drop.contains(e.id)) {
            kept.push_back(e);
        }
    }
    return Hypergraph(graph.nodes(), std::move(kept), graph.ext());
}

}  // namespace hrgen
