#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hrgen/counting.hpp"
#include "hrgen/error.hpp"
#include "hrgen/grammar.hpp"
#include "hrgen/random.hpp"

namespace hrgen {

struct Choice {
    std::size_t step = 0;
    std::string production;
    std::optional<std::size_t> split;  // budget of the rank-1 child

    bool operator==(const Choice&) const = default;
};

struct SampleReport {
    Hypergraph graph;
    DerivationTree tree;
    std::vector<Choice> choices;  // pre-order, one per tree node
};

struct SamplerOptions {
    // Also re-add every split distribution and compare it with m2. The
    // production weights are always checked.
    bool check_weights = false;
};

// No hypergraph of the requested size is derivable.
class EmptySliceError : public Error {
public:
    EmptySliceError(Symbol nonterminal, std::size_t size);

    const Symbol& nonterminal() const noexcept { return nonterminal_; }
    std::size_t size() const noexcept { return size_; }

private:
    Symbol nonterminal_;
    std::size_t size_;
};

// Draws derivations with probability proportional to the counts in
// CountTables, so every derivation of the requested size is equally
// likely. Keeps references to the grammar and the tables.
class Sampler {
public:
    // Throws InputError when the grammar is not in CNF or the tables miss
    // one of its rows.
    Sampler(const Grammar& grammar, const CountTables& tables, SamplerOptions options = {});

    // A size-n hypergraph derived from `nonterminal`, or nullopt when there
    // is none. Throws RangeError when n < type(nonterminal) or
    // n - type(nonterminal) > n_max, InvariantBreach when the tables are
    // inconsistent.
    std::optional<SampleReport> gen(const Symbol& nonterminal, std::size_t n, RandomSource& rng) const;

private:
    struct Rule {
        const Production* production = nullptr;
        const std::vector<mpz_class>* weight = nullptr;
        std::size_t internal = 0;
        // Edges by rank. Attachments are slots: the position in ext, or
        // type + k for the k-th internal node.
        std::vector<std::pair<Symbol, std::vector<std::uint32_t>>> edges;
        std::size_t first = 0;  // nonterminal indices of the two children
        std::size_t second = 0;
        bool binary = false;
    };

    const Grammar& grammar_;
    const CountTables& tables_;
    SamplerOptions options_;
    std::vector<Symbol> nonterminals_;
    std::vector<std::size_t> arity_;
    std::vector<const std::vector<mpz_class>*> m1_;
    std::vector<std::vector<Rule>> rules_;  // by lhs index, declaration order

    std::size_t index_of(const Symbol& nonterminal) const;
};

std::optional<SampleReport> gen(const Grammar& grammar, const CountTables& tables, const Symbol& nonterminal,
                                std::size_t n, RandomSource& rng, SamplerOptions options = {});

// Sample i uses RandomSource(seed).split(i). Throws EmptySliceError when
// count > 0 and the slice is empty.
std::vector<SampleReport> sample_many(const Grammar& grammar, const CountTables& tables, const Symbol& nonterminal,
                                      std::size_t n, std::uint64_t seed, std::size_t count,
                                      SamplerOptions options = {});

json to_json(const SampleReport& report);

}  // namespace hrgen
