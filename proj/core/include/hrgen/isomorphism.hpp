#pragma once

#include <cstddef>
#include <string>

#include "hrgen/hypergraph.hpp"

namespace hrgen {

// Largest |H| accepted by canonical_form. The search is exact and can be
// exponential on highly symmetric graphs, so it is meant for test- and
// oracle-sized inputs.
inline constexpr std::size_t kCanonicalSizeBound = 64;

// A byte string that is equal for two hypergraphs iff they are isomorphic
// (label-, attachment- and external-sequence-preserving bijections).
//
// Nodes are ordered by color refinement over the incidence structure;
// remaining ties are broken by individualizing each member of the first
// non-trivial cell in turn, and the lexicographically smallest encoding
// over all leaves is returned. Isolated internal nodes are counted rather
// than searched.
//
// Throws RangeError when size() > kCanonicalSizeBound and InputError when
// the graph is not well formed (duplicate ids, dangling references,
// repeated external nodes).
std::string canonical_form(const Hypergraph& graph);

bool is_isomorphic(const Hypergraph& lhs, const Hypergraph& rhs);

// Lowercase hex rendering of a canonical form, as used in JSON output.
std::string to_hex(const std::string& bytes);

}  // namespace hrgen
