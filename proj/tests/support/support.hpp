#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <random>
#include <set>
#include <string>

#include "hrgen/hrgen.hpp"

namespace hrgen::testing {

std::filesystem::path fixture_path(const std::string& file);
// fixtures/<name>.json
Grammar load_fixture(const std::string& name);
// fixtures/<name>.counts.json
json load_sidecar(const std::string& name);

// The term graph used as the running example: 6 nodes, one external.
Hypergraph term_graph();
// A derivation of term_graph() over fig4_cnf.
DerivationTree term_graph_tree();

// Tries every bijection of nodes that fixes ext position-wise. Only for
// small graphs.
bool naive_isomorphic(const Hypergraph& a, const Hypergraph& b);

// Random graph of the given type; labels drawn from `typing`, attachments
// uniformly from all nodes (repeats allowed), external nodes distinct.
Hypergraph random_hypergraph(std::mt19937_64& rng, const TypingFunction& typing, std::size_t type,
                             std::size_t max_internal, std::size_t max_edges);

// Same graph with node ids permuted and edges shuffled.
Hypergraph scrambled(const Hypergraph& graph, std::mt19937_64& rng);

// The word spelled by a string graph: type 2, a simple path from ext 1
// to ext 2 through every node, each edge of type 2 pointing along it.
// The empty word is two unconnected external nodes. nullopt if the graph
// is not of that shape.
std::optional<std::string> string_graph_word(const Hypergraph& graph);

// Canonical forms of L_n from the grammar's start symbol.
std::set<std::string> slice_forms(const Grammar& grammar, std::size_t n);

}  // namespace hrgen::testing
