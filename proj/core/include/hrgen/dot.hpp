#pragma once

#include <string>

#include "hrgen/hypergraph.hpp"

namespace hrgen {

// Graphviz rendering: nodes as points (external ones with an "ext:i"
// label), each hyperedge as a box carrying its label, and one line per
// tentacle annotated with its 1-based index. Nodes come first, then
// edges, both in id order.
std::string to_dot(const Hypergraph& graph, const std::string& name = "H");

}  // namespace hrgen
