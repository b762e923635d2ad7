#include "hrgen/json_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "hrgen/error.hpp"

namespace hrgen {

namespace {

const json& member(const json& j, const char* key, const char* context) {
    if (!j.is_object()) {
        throw InputError(std::string(context) + ": expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw InputError(std::string(context) + ": missing \"" + key + "\"");
    }
    return *it;
}

std::string string_of(const json& j, const char* context) {
    if (!j.is_string()) {
        throw InputError(std::string(context) + ": expected a string, got " + j.dump());
    }
    return j.get<std::string>();
}

const json& array_of(const json& j, const char* context) {
    if (!j.is_array()) {
        throw InputError(std::string(context) + ": expected an array");
    }
    return j;
}

// Parse with access to the edge-name table, which marks need.
Hypergraph parse_graph(const json& j, std::unordered_map<std::string, EdgeId>* edge_names) {
    std::unordered_map<std::string, NodeId> node_ids;
    std::vector<NodeId> nodes;
    std::uint32_t fresh = 0;
    for (const auto& n : array_of(member(j, "nodes", "hypergraph"), "hypergraph.nodes")) {
        auto name = string_of(n, "hypergraph.nodes");
        auto [it, inserted] = node_ids.emplace(name, NodeId{fresh});
        if (inserted) {
            ++fresh;
        }
        nodes.push_back(it->second);
    }
    auto ref = [&](const json& n, const char* context) {
        auto name = string_of(n, context);
        auto it = node_ids.find(name);
        if (it == node_ids.end()) {
            it = node_ids.emplace(name, NodeId{fresh++}).first;
        }
        return it->second;
    };

    std::unordered_map<std::string, EdgeId> local_edges;
    auto& names = edge_names != nullptr ? *edge_names : local_edges;
    std::vector<Edge> edges;
    std::uint32_t next_edge = 0;
    for (const auto& e : array_of(member(j, "edges", "hypergraph"), "hypergraph.edges")) {
        Edge edge;
        auto name = string_of(member(e, "id", "edge"), "edge.id");
        auto [it, inserted] = names.emplace(name, EdgeId{next_edge});
        if (inserted) {
            ++next_edge;
        }
        edge.id = it->second;
        edge.label = string_of(member(e, "label", "edge"), "edge.label");
        for (const auto& a : array_of(member(e, "att", "edge"), "edge.att")) {
            edge.att.push_back(ref(a, "edge.att"));
        }
        edges.push_back(std::move(edge));
    }

    std::vector<NodeId> ext;
    for (const auto& n : array_of(member(j, "ext", "hypergraph"), "hypergraph.ext")) {
        ext.push_back(ref(n, "hypergraph.ext"));
    }
    return Hypergraph(std::move(nodes), std::move(edges), std::move(ext));
}

}  // namespace

json to_json(const Hypergraph& graph) {
    auto node = [](NodeId v) { return "v" + std::to_string(v.value); };
    json nodes = json::array();
    for (NodeId v : graph.nodes()) {
        nodes.push_back(node(v));
    }
    json edges = json::array();
    for (const auto& e : graph.edges()) {
        json att = json::array();
        for (NodeId v : e.att) {
            att.push_back(node(v));
        }
        edges.push_back({{"id", "e" + std::to_string(e.id.value)}, {"label", e.label}, {"att", std::move(att)}});
    }
    json ext = json::array();
    for (NodeId v : graph.ext()) {
        ext.push_back(node(v));
    }
    return {{"nodes", std::move(nodes)}, {"ext", std::move(ext)}, {"edges", std::move(edges)}};
}

Hypergraph hypergraph_from_json(const json& j) { return parse_graph(j, nullptr); }

json to_json(const Grammar& g) {
    json types = json::object();
    for (const auto& [s, a] : g.typing.entries()) {
        types[s] = a;
    }
    json productions = json::array();
    for (const auto& p : g.productions) {
        json marks = json::object();
        for (const auto& e : p.rhs.edges()) {
            auto it = p.marks.find(e.id);
            if (it != p.marks.end()) {
                marks["e" + std::to_string(e.id.value)] = it->second;
            }
        }
        productions.push_back({{"name", p.name}, {"lhs", p.lhs}, {"rhs", to_json(p.rhs)}, {"marks", marks}});
    }
    return {{"types", types},
            {"nonterminals", g.nonterminals},
            {"terminals", g.terminals},
            {"start", g.start},
            {"productions", productions}};
}

Grammar grammar_from_json(const json& j) {
    Grammar g;
    const auto& types = member(j, "types", "grammar");
    if (!types.is_object()) {
        throw InputError("grammar.types: expected an object");
    }
    for (const auto& [s, a] : types.items()) {
        if (!a.is_number_unsigned()) {
            throw InputError("grammar.types: arity of '" + s + "' is not a non-negative integer");
        }
        g.typing.set(s, a.get<std::size_t>());
    }
    for (const auto& s : array_of(member(j, "nonterminals", "grammar"), "grammar.nonterminals")) {
        g.nonterminals.insert(string_of(s, "grammar.nonterminals"));
    }
    for (const auto& s : array_of(member(j, "terminals", "grammar"), "grammar.terminals")) {
        g.terminals.insert(string_of(s, "grammar.terminals"));
    }
    g.start = string_of(member(j, "start", "grammar"), "grammar.start");
    for (const auto& pj : array_of(member(j, "productions", "grammar"), "grammar.productions")) {
        Production p;
        p.name = string_of(member(pj, "name", "production"), "production.name");
        p.lhs = string_of(member(pj, "lhs", "production"), "production.lhs");
        std::unordered_map<std::string, EdgeId> edge_names;
        p.rhs = parse_graph(member(pj, "rhs", "production"), &edge_names);
        auto mit = pj.find("marks");
        if (mit != pj.end()) {
            if (!mit->is_object()) {
                throw InputError("production " + p.name + ": marks must be an object");
            }
            for (const auto& [edge, rank] : mit->items()) {
                auto e = edge_names.find(edge);
                if (e == edge_names.end()) {
                    throw InputError("production " + p.name + ": mark for unknown edge '" + edge + "'");
                }
                if (!rank.is_number_unsigned()) {
                    throw InputError("production " + p.name + ": rank of '" + edge + "' must be a positive integer");
                }
                p.marks[e->second] = rank.get<unsigned>();
            }
        } else if (p.rhs.edge_count() <= 1) {
            // a lone edge needs no explicit mark
            for (const auto& e : p.rhs.edges()) {
                p.marks[e.id] = 1;
            }
        }
        g.productions.push_back(std::move(p));
    }
    return g;
}

json to_json(const DerivationTree& tree) {
    json children = json::array();
    for (const auto& c : tree.children) {
        children.push_back(to_json(c));
    }
    return {{"production", tree.production}, {"children", std::move(children)}};
}

DerivationTree tree_from_json(const json& j) {
    DerivationTree t;
    t.production = string_of(member(j, "production", "tree"), "tree.production");
    auto it = j.find("children");
    if (it != j.end()) {
        for (const auto& c : array_of(*it, "tree.children")) {
            t.children.push_back(tree_from_json(c));
        }
    }
    return t;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

Grammar load_grammar(const std::filesystem::path& path) {
    auto j = read_json_file(path);
    try {
        return grammar_from_json(j);
    } catch (const json::exception& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

std::string pretty(const json& j) { return j.dump(2) + "\n"; }

}  // namespace hrgen
