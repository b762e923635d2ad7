#include "support.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace hrgen::testing {

std::filesystem::path fixture_path(const std::string& file) { return std::filesystem::path(HRGEN_FIXTURE_DIR) / file; }

Grammar load_fixture(const std::string& name) { return load_grammar(fixture_path(name + ".json")); }

json load_sidecar(const std::string& name) { return read_json_file(fixture_path(name + ".counts.json")); }

Hypergraph term_graph() {
    // n1..n6 are nodes 0..5
    return make_hypergraph(6,
                           {{"+", {1, 5, 5}},
                            {"*", {4, 1, 2}},
                            {"1", {2}},
                            {"*", {0, 1, 3}},
                            {"+", {3, 4, 2}},
                            {"1", {5}}},
                           {0});
}

DerivationTree term_graph_tree() {
    auto leaf = [](const char* p) { return DerivationTree{p, {}}; };
    DerivationTree p4{"P4", {leaf("P9"), leaf("P7")}};
    DerivationTree p5{"P5", {leaf("P10"), p4}};
    DerivationTree p8{"P8", {p5, leaf("P3")}};
    DerivationTree p2{"P2", {leaf("P6"), leaf("P3")}};
    return DerivationTree{"P1", {p8, p2}};
}

namespace {

using EdgeKey = std::pair<Symbol, std::vector<std::size_t>>;

std::map<NodeId, std::size_t> positions(const Hypergraph& g) {
    std::map<NodeId, std::size_t> out;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        out[g.nodes()[i]] = i;
    }
    return out;
}

}  // namespace

bool naive_isomorphic(const Hypergraph& a, const Hypergraph& b) {
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count() || a.type() != b.type()) {
        return false;
    }
    const auto pa = positions(a);
    const auto pb = positions(b);

    std::multiset<EdgeKey> target;
    for (const auto& e : b.edges()) {
        EdgeKey k{e.label, {}};
        for (auto v : e.att) {
            k.second.push_back(pb.at(v));
        }
        target.insert(k);
    }

    // map[i] = image in b of node i of a
    std::vector<std::size_t> map(a.node_count(), SIZE_MAX);
    std::vector<bool> taken(b.node_count(), false);
    for (std::size_t i = 0; i < a.type(); ++i) {
        map[pa.at(a.ext()[i])] = pb.at(b.ext()[i]);
        taken[pb.at(b.ext()[i])] = true;
    }
    std::vector<std::size_t> free_a;
    std::vector<std::size_t> free_b;
    for (std::size_t i = 0; i < a.node_count(); ++i) {
        if (map[i] == SIZE_MAX) {
            free_a.push_back(i);
        }
        if (!taken[i]) {
            free_b.push_back(i);
        }
    }
    std::sort(free_b.begin(), free_b.end());
    do {
        for (std::size_t k = 0; k < free_a.size(); ++k) {
            map[free_a[k]] = free_b[k];
        }
        std::multiset<EdgeKey> image;
        for (const auto& e : a.edges()) {
            EdgeKey k{e.label, {}};
            for (auto v : e.att) {
                k.second.push_back(map[pa.at(v)]);
            }
            image.insert(k);
        }
        if (image == target) {
            return true;
        }
    } while (std::next_permutation(free_b.begin(), free_b.end()));
    return false;
}

Hypergraph random_hypergraph(std::mt19937_64& rng, const TypingFunction& typing, std::size_t type,
                             std::size_t max_internal, std::size_t max_edges) {
    std::vector<std::pair<Symbol, std::size_t>> labels(typing.entries().begin(), typing.entries().end());
    const std::size_t internal = std::uniform_int_distribution<std::size_t>(0, max_internal)(rng);
    std::size_t nodes = type + internal;
    const std::size_t edge_count = std::uniform_int_distribution<std::size_t>(0, max_edges)(rng);
    std::vector<EdgeSpec> edges;
    for (std::size_t i = 0; i < edge_count; ++i) {
        auto [label, arity] = labels[std::uniform_int_distribution<std::size_t>(0, labels.size() - 1)(rng)];
        if (arity > 0 && nodes == 0) {
            nodes = 1;
        }
        EdgeSpec e{label, {}};
        for (std::size_t k = 0; k < arity; ++k) {
            e.att.push_back(static_cast<std::uint32_t>(std::uniform_int_distribution<std::size_t>(0, nodes - 1)(rng)));
        }
        edges.push_back(std::move(e));
    }
    std::vector<std::uint32_t> order(nodes);
    std::iota(order.begin(), order.end(), 0u);
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(type);
    return make_hypergraph(nodes, std::move(edges), order);
}

Hypergraph scrambled(const Hypergraph& graph, std::mt19937_64& rng) {
    std::vector<std::uint32_t> ids(graph.node_count());
    std::iota(ids.begin(), ids.end(), 100u);
    std::shuffle(ids.begin(), ids.end(), rng);
    std::map<NodeId, NodeId> rename;
    std::vector<NodeId> nodes;
    for (std::size_t i = 0; i < graph.node_count(); ++i) {
        rename[graph.nodes()[i]] = NodeId{ids[i]};
        nodes.push_back(NodeId{ids[i]});
    }
    std::shuffle(nodes.begin(), nodes.end(), rng);
    std::vector<Edge> edges;
    for (const auto& e : graph.edges()) {
        Edge copy{e.id, e.label, {}};
        for (auto v : e.att) {
            copy.att.push_back(rename.at(v));
        }
        edges.push_back(std::move(copy));
    }
    std::shuffle(edges.begin(), edges.end(), rng);
    for (std::uint32_t i = 0; i < edges.size(); ++i) {
        edges[i].id = EdgeId{i + 7};
    }
    std::vector<NodeId> ext;
    for (auto v : graph.ext()) {
        ext.push_back(rename.at(v));
    }
    return Hypergraph(std::move(nodes), std::move(edges), std::move(ext));
}

std::optional<std::string> string_graph_word(const Hypergraph& graph) {
    if (graph.type() == 2 && graph.node_count() == 2 && graph.edge_count() == 0) {
        return std::string();
    }
    if (graph.type() != 2 || graph.node_count() != graph.edge_count() + 1) {
        return std::nullopt;
    }
    std::map<NodeId, const Edge*> out_edge;
    for (const auto& e : graph.edges()) {
        if (e.att.size() != 2 || !out_edge.emplace(e.att[0], &e).second) {
            return std::nullopt;
        }
    }
    std::string word;
    std::set<NodeId> visited{graph.ext()[0]};
    NodeId at = graph.ext()[0];
    while (at != graph.ext()[1]) {
        auto it = out_edge.find(at);
        if (it == out_edge.end()) {
            return std::nullopt;
        }
        word += it->second->label;
        at = it->second->att[1];
        if (!visited.insert(at).second) {
            return std::nullopt;
        }
    }
    if (word.size() != graph.edge_count()) {
        return std::nullopt;
    }
    return word;
}

std::set<std::string> slice_forms(const Grammar& grammar, std::size_t n) {
    std::set<std::string> out;
    for (const auto& [form, entry] : census(grammar, grammar.start, n).entries) {
        out.insert(form);
    }
    return out;
}

}  // namespace hrgen::testing
