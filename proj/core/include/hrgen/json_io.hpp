#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "hrgen/grammar.hpp"
#include "hrgen/hypergraph.hpp"

namespace hrgen {

using json = nlohmann::json;

// Hypergraph: {"nodes": [str], "ext": [str], "edges": [{"id", "label", "att"}]}.
// Parsing numbers nodes and edges by position; names only need to be
// consistent within the object. A reference to an undeclared node is kept
// (as a fresh id) so that validate() reports it. Serializing names nodes
// "v<id>" and edges "e<id>".
json to_json(const Hypergraph& graph);
Hypergraph hypergraph_from_json(const json& j);

// Grammar: {"types", "nonterminals", "terminals", "start",
//           "productions": [{"name", "lhs", "rhs", "marks": {edge id: rank}}]}.
json to_json(const Grammar& grammar);
Grammar grammar_from_json(const json& j);

// {"production": name, "children": [...]}
json to_json(const DerivationTree& tree);
DerivationTree tree_from_json(const json& j);

// Throw InputError on unreadable files, malformed JSON or schema mismatches.
json read_json_file(const std::filesystem::path& path);
Grammar load_grammar(const std::filesystem::path& path);

// Two-space indented dump with a trailing newline.
std::string pretty(const json& j);

}  // namespace hrgen
