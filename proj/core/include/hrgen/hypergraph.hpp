#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hrgen {

using Symbol = std::string;

struct NodeId {
    std::uint32_t value = 0;
    friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

struct EdgeId {
    std::uint32_t value = 0;
    friend constexpr auto operator<=>(EdgeId, EdgeId) = default;
};

struct Edge {
    EdgeId id;
    Symbol label;
    std::vector<NodeId> att;

    bool operator==(const Edge&) const = default;
};

// A reported breach of a structural invariant. `code` is a stable
// kebab-case identifier; `message` names the offending id.
struct Violation {
    std::string code;
    std::string message;

    bool operator==(const Violation&) const = default;
};

bool has_violation(std::span<const Violation> violations, std::string_view code);

// Arity of every label in use.
class TypingFunction {
public:
    TypingFunction() = default;
    TypingFunction(std::initializer_list<std::pair<const Symbol, std::size_t>> entries);

    void set(const Symbol& label, std::size_t arity);
    bool defines(const Symbol& label) const;
    std::optional<std::size_t> arity(const Symbol& label) const;
    // Throws InputError for an unknown label.
    std::size_t at(const Symbol& label) const;

    const std::map<Symbol, std::size_t>& entries() const noexcept { return arity_; }

    bool operator==(const TypingFunction&) const = default;

private:
    std::map<Symbol, std::size_t> arity_;
};

// Immutable hypergraph value: nodes, labeled hyperedges with attachment
// sequences, and a sequence of external nodes.
//
// The constructor does not check invariants; use validate(). Every
// operation that produces a new graph regenerates ids densely (nodes and
// edges numbered 0..k-1 by position), so identity across operations is
// positional.
class Hypergraph {
public:
    Hypergraph() = default;
    Hypergraph(std::vector<NodeId> nodes, std::vector<Edge> edges, std::vector<NodeId> ext);

    const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<NodeId>& ext() const noexcept { return ext_; }

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    // |V| + |E|
    std::size_t size() const noexcept { return nodes_.size() + edges_.size(); }
    // |ext|
    std::size_t type() const noexcept { return ext_.size(); }
    std::size_t internal_node_count() const;

    const Edge* find_edge(EdgeId id) const noexcept;
    // Position of `id` in edges(); throws InputError when absent.
    std::size_t edge_position(EdgeId id) const;

    bool operator==(const Hypergraph&) const = default;

private:
    std::vector<NodeId> nodes_;
    std::vector<Edge> edges_;
    std::vector<NodeId> ext_;
};

struct EdgeSpec {
    Symbol label;
    std::vector<std::uint32_t> att;
};

// Dense construction: nodes 0..node_count-1, edge i gets id i.
Hypergraph make_hypergraph(std::size_t node_count, std::vector<EdgeSpec> edges,
                           std::vector<std::uint32_t> ext);

// Every violated invariant; empty iff `graph` is well formed over `typing`.
std::vector<Violation> validate(const Hypergraph& graph, const TypingFunction& typing);

// The handle A•: type(label) external nodes and one edge attached to them
// in order. Throws InputError for an unknown label.
Hypergraph handle(const Symbol& label, const TypingFunction& typing);
Hypergraph handle(const Symbol& label, std::size_t arity);

struct EdgeReplacement {
    EdgeId edge;
    const Hypergraph* graph = nullptr;
};

// Simultaneous hyperedge replacement H[e1/R1, ..., en/Rn].
//
// Result layout: the host's nodes keep their positions; the internal nodes
// of each replacement follow, grouped by the host order of the replaced
// edges. Each replaced edge is substituted in place by the edges of its
// replacement, in their order. The external sequence is the host's.
//
// Throws InputError on a missing or duplicated edge, or when
// |att(e)| != type(R).
Hypergraph replace_all(const Hypergraph& host, std::span<const EdgeReplacement> assignment);
Hypergraph replace_all(const Hypergraph& host, const std::map<EdgeId, Hypergraph>& assignment);

// H[e/R].
Hypergraph replace(const Hypergraph& host, EdgeId edge, const Hypergraph& replacement);

// The graph without the given edges. Nodes and the remaining edges keep their ids.
Hypergraph remove_edges(const Hypergraph& graph, std::span<const EdgeId> edges);

}  // namespace hrgen

template <>
struct std::hash<hrgen::NodeId> {
    std::size_t operator()(hrgen::NodeId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};

template <>
struct std::hash<hrgen::EdgeId> {
    std::size_t operator()(hrgen::EdgeId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
