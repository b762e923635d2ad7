#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hrgen/counting.hpp"
#include "hrgen/grammar.hpp"
#include "hrgen/json_io.hpp"

namespace hrgen {

inline constexpr std::size_t kDefaultOracleCap = 14;

// kDefaultOracleCap unless HRGEN_ORACLE_CAP holds a positive integer.
std::size_t default_oracle_cap();

struct OracleOptions {
    std::size_t cap = kDefaultOracleCap;  // largest yield size enumerated
};

// Exhaustive enumeration of derivation trees by yield size, for any
// grammar (not only CNF). A grammar in which some size has infinitely many
// trees (a loop of size-preserving productions that can be completed) is
// rejected with InputError. Trees are memoized per (nonterminal, size).
class Enumerator {
public:
    explicit Enumerator(const Grammar& grammar, OracleOptions options = {});
    Enumerator(const Enumerator&) = delete;
    Enumerator& operator=(const Enumerator&) = delete;

    // Trees rooted at `nonterminal` whose yield has size n, ordered by
    // production declaration order, then children budgets, then children.
    // Throws RangeError when n exceeds the cap.
    const std::vector<DerivationTree>& trees(const Symbol& nonterminal, std::size_t n);

    const Grammar& grammar() const noexcept { return grammar_; }

private:
    struct Shape {
        const Production* production;
        std::size_t fixed;  // internal nodes plus terminal edges
        std::vector<Symbol> children;
    };

    const std::vector<DerivationTree>& by_offset(const Symbol& nonterminal, std::size_t offset);
    // Every split of `remaining` over children j.. and the product of their trees.
    void distribute(const Shape& shape, std::vector<std::size_t>& parts, std::size_t j, std::size_t remaining,
                    std::vector<DerivationTree>& out);

    Grammar grammar_;
    OracleOptions options_;
    std::map<Symbol, std::vector<Shape>> shapes_;
    std::map<std::pair<Symbol, std::size_t>, std::vector<DerivationTree>> memo_;
    std::set<std::pair<Symbol, std::size_t>> in_progress_;
    std::set<std::pair<Symbol, std::size_t>> cyclic_;
};

std::vector<DerivationTree> enumerate_trees(const Grammar& grammar, const Symbol& nonterminal, std::size_t n,
                                            OracleOptions options = {});

struct CensusEntry {
    std::uint64_t multiplicity = 0;
    DerivationTree witness;
    std::optional<DerivationTree> second_witness;
};

struct SliceCensus {
    Symbol nonterminal;
    std::size_t size = 0;
    std::map<std::string, CensusEntry> entries;  // keyed by canonical form
    std::uint64_t total_trees = 0;
    std::uint64_t total_graphs = 0;
};

// Canonical forms of the yields of every tree. Throws InvariantBreach if a
// yield does not have size n.
SliceCensus census(const Grammar& grammar, const Symbol& nonterminal, std::size_t n, OracleOptions options = {});
SliceCensus census(Enumerator& enumerator, const Symbol& nonterminal, std::size_t n);

struct AmbiguityVerdict {
    std::size_t size = 0;
    bool ambiguous = false;
    std::optional<std::pair<DerivationTree, DerivationTree>> witnesses;
    std::string canonical;  // of the shared yield when ambiguous
};

// Exact for L_n from the start symbol.
AmbiguityVerdict check_n_ambiguity(const Grammar& grammar, std::size_t n, OracleOptions options = {});

// Tree counts laid out like CountTables (m1 per nonterminal, m2 per root
// production) for l = 0..n_max. Throws RangeError if some l + type(A)
// exceeds the cap.
CountTables oracle_tables(Enumerator& enumerator, std::size_t n_max);

// The expected-counts file kept next to each fixture: oracle_tables() with
// n_max = cap - (largest nonterminal type), plus "slice_sizes": the number
// of distinct graphs derivable from the start symbol for each l.
json oracle_sidecar(const Grammar& grammar, OracleOptions options = {});

json to_json(const SliceCensus& census);
json to_json(const AmbiguityVerdict& verdict);

}  // namespace hrgen
