#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hrgen/cnf.hpp"
#include "hrgen/grammar.hpp"
#include "hrgen/json_io.hpp"

namespace hrgen {

// m1[A][l]: derivations from A• of hypergraphs of size l + type(A).
// m2[p][l]: those whose first step applies p.
// Columns run over 0..n_max.
struct CountTables {
    std::size_t n_max = 0;
    std::map<Symbol, std::vector<mpz_class>> m1;
    std::map<std::string, std::vector<mpz_class>> m2;

    bool operator==(const CountTables&) const = default;
};

// Fills both tables for l = 0..n. Column l is completed (every m2 entry,
// then m1 as their row sums) before column l + 1 is started; a binary
// production with i internal nodes reads m1 columns strictly below l.
// Throws InputError for a non-CNF grammar.
CountTables pre(const Grammar& grammar, std::size_t n);
CountTables pre(const Grammar& grammar, const std::vector<ShorthandProduction>& shorthands, std::size_t n);

// Throw RangeError when l > n_max and InputError for unknown symbols.
const mpz_class& table_lookup(const CountTables& tables, const Symbol& nonterminal, std::size_t l);
std::vector<std::pair<std::string, mpz_class>> production_weights(const CountTables& tables, const Grammar& grammar,
                                                                  const Symbol& nonterminal, std::size_t l);

// {"n_max": n, "m1": {A: ["0", "1", ...]}, "m2": {p: [...]}}
json to_json(const CountTables& tables);
CountTables tables_from_json(const json& j);

// SHA-256 (hex) of the compact grammar JSON followed by n.
std::string cache_key(const Grammar& grammar, std::size_t n);

// pre() backed by a JSON cache file holding {"key", "tables"}. A missing,
// unreadable or stale file is recomputed and rewritten.
CountTables pre_cached(const Grammar& grammar, std::size_t n, const std::filesystem::path& cache_file);

}  // namespace hrgen
