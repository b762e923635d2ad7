#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hrgen/grammar.hpp"

namespace hrgen {

// Productions of a CNF grammar:
//   A -> BC,i   two nonterminal edges (B marked 1, C marked 2)
//   A -> a,i    one terminal edge, possibly with isolated nodes
//   A -> λ,i    no edges
// where i is the number of internal nodes of the rhs.
enum class ShorthandKind { NonTerminal, Terminal, Lambda };

struct ShorthandProduction {
    std::string name;
    Symbol lhs;
    ShorthandKind kind = ShorthandKind::Lambda;
    Symbol first;   // B, or the terminal label
    Symbol second;  // C
    std::size_t internal = 0;

    bool operator==(const ShorthandProduction&) const = default;
};

// "A ->P1 CA,1", "A ->P3 1,0", "S ->P0 λ,0"
std::string to_string(const ShorthandProduction& p);

// Empty iff every production has one of the CNF shapes and an empty
// production exists only for a start symbol that occurs in no rhs.
std::vector<Violation> is_cnf(const Grammar& grammar);

struct CnfResult {
    Grammar grammar;
    std::vector<std::string> trace;        // one line per applied rewrite
    std::vector<std::string> diagnostics;  // e.g. "already in CNF"
    bool changed = false;
};

// Normalizes to CNF in four passes:
//   1. empty productions: every production is copied once per subset of
//      its nullable edges with that subset deleted; empty productions are
//      then dropped except for the start symbol, which is moved to a fresh
//      start symbol when it occurs in some rhs;
//   2. unit productions A -> X are replaced by A -> R[e/R'] for every
//      non-unit form reachable through chains of units;
//   3. rhs with k > 2 edges keep their rank-1 edge and move the others
//      into a fresh nonterminal whose external nodes are the attachments
//      of the moved edges, duplicates removed in first-occurrence order;
//   4. terminal edges in two-edge rhs are replaced by a fresh nonterminal
//      per terminal label with a handle production.
// Fresh nonterminals are named _T1, _T2, ... (the new start symbol _S1),
// new productions _p1, _p2, ..., skipping names already in use. Duplicate
// productions (same lhs, isomorphic rhs) are merged, unproductive and
// unreachable productions removed.
//
// Throws InputError when the grammar does not validate. A grammar whose
// start symbol generates nothing is returned unchanged with a diagnostic.
CnfResult to_cnf(const Grammar& grammar);

// Throws InputError unless is_cnf(grammar) is empty.
std::vector<ShorthandProduction> shorthand(const Grammar& grammar);

}  // namespace hrgen
