#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hrgen/hypergraph.hpp"

namespace hrgen {

// p = (lhs, rhs) with a ranking of the rhs edges. Ranks are 1..|E(rhs)|;
// rank 1 plays the role of alpha, rank 2 of beta.
struct Production {
    std::string name;
    Symbol lhs;
    Hypergraph rhs;
    std::map<EdgeId, unsigned> marks;

    // No edges and every node external.
    bool is_empty() const noexcept { return rhs.edge_count() == 0 && rhs.node_count() == rhs.type(); }

    bool operator==(const Production&) const = default;
};

struct Grammar {
    TypingFunction typing;
    std::set<Symbol> nonterminals;
    std::set<Symbol> terminals;
    std::vector<Production> productions;
    Symbol start;

    bool is_nonterminal(const Symbol& s) const { return nonterminals.contains(s); }
    bool is_terminal(const Symbol& s) const { return terminals.contains(s); }

    // nullptr when absent.
    const Production* find(const std::string& name) const;
    // Indices into `productions` with the given lhs, in declaration order.
    std::vector<std::size_t> productions_of(const Symbol& lhs) const;

    bool operator==(const Grammar&) const = default;
};

// Ordered derivation tree: one child per nonterminal edge of the root
// production's rhs, in mark order.
struct DerivationTree {
    std::string production;
    std::vector<DerivationTree> children;

    bool operator==(const DerivationTree&) const = default;
    // By production name, then children lexicographically.
    std::strong_ordering operator<=>(const DerivationTree& other) const;
};

std::vector<Violation> validate_grammar(const Grammar& grammar);

// Edges of p's rhs sorted by rank.
std::vector<const Edge*> edges_by_mark(const Production& p);
// The nonterminal edges of p's rhs sorted by rank.
std::vector<const Edge*> nonterminal_edges_by_mark(const Grammar& grammar, const Production& p);

// yield(p(t1..tn)) = rhs(p)[e1/yield(t1), ..., en/yield(tn)].
// Throws InputError on an unknown production, a label/lhs mismatch or a
// wrong number of children.
Hypergraph yield_of(const Grammar& grammar, const DerivationTree& tree);

// Production names in pre-order.
std::vector<std::string> leftmost_sequence(const DerivationTree& tree);

std::size_t tree_node_count(const DerivationTree& tree);

// Every production satisfies |rhs| - type(lhs) >= 1.
bool is_non_contracting(const Grammar& grammar);

// True iff some production of the start symbol is empty.
bool has_start_empty_production(const Grammar& grammar);

// H[e/rhs(p)]; throws InputError when lab(e) != lhs(p).
Hypergraph direct_derive(const Grammar& grammar, const Hypergraph& host, EdgeId edge, const Production& p);

}  // namespace hrgen
