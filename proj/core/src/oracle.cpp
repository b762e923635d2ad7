#include "hrgen/oracle.hpp"

#include <algorithm>
#include <cstdlib>

#include "hrgen/error.hpp"
#include "hrgen/isomorphism.hpp"

namespace hrgen {

std::size_t default_oracle_cap() {
    if (const char* env = std::getenv("HRGEN_ORACLE_CAP")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<std::size_t>(v);
        }
    }
    return kDefaultOracleCap;
}

Enumerator::Enumerator(const Grammar& grammar, OracleOptions options) : grammar_(grammar), options_(options) {
    for (const auto& p : grammar_.productions) {
        Shape s{&p, p.rhs.node_count() - p.rhs.type(), {}};
        for (const Edge* e : edges_by_mark(p)) {
            if (grammar_.is_nonterminal(e->label)) {
                s.children.push_back(e->label);
            } else {
                ++s.fixed;
            }
        }
        shapes_[p.lhs].push_back(std::move(s));
    }
}

const std::vector<DerivationTree>& Enumerator::trees(const Symbol& nonterminal, std::size_t n) {
    static const std::vector<DerivationTree> none;
    if (n > options_.cap) {
        throw RangeError("oracle: size " + std::to_string(n) + " exceeds the cap " + std::to_string(options_.cap));
    }
    if (!grammar_.is_nonterminal(nonterminal)) {
        throw InputError("oracle: unknown nonterminal " + nonterminal);
    }
    const auto type = grammar_.typing.at(nonterminal);
    if (n < type) {
        return none;
    }
    return by_offset(nonterminal, n - type);
}

const std::vector<DerivationTree>& Enumerator::by_offset(const Symbol& nonterminal, std::size_t offset) {
    const auto key = std::make_pair(nonterminal, offset);
    if (auto it = memo_.find(key); it != memo_.end()) {
        return it->second;
    }
    in_progress_.insert(key);

    std::vector<DerivationTree> result;
    auto it = shapes_.find(nonterminal);
    if (it != shapes_.end()) {
        for (const auto& shape : it->second) {
            if (shape.fixed > offset) {
                continue;
            }
            const std::size_t rest = offset - shape.fixed;
            const std::size_t m = shape.children.size();
            if (m == 0) {
                if (rest == 0) {
                    result.push_back({shape.production->name, {}});
                }
                continue;
            }
            std::vector<std::size_t> parts(m, 0);
            distribute(shape, parts, 0, rest, result);
        }
    }

    in_progress_.erase(key);
    if (cyclic_.contains(key) && !result.empty()) {
        throw InputError("oracle: " + nonterminal + " derives itself without growing (at offset " +
                         std::to_string(offset) + "); the number of trees is infinite");
    }
    return memo_.emplace(key, std::move(result)).first->second;
}

void Enumerator::distribute(const Shape& shape, std::vector<std::size_t>& parts, std::size_t j,
                            std::size_t remaining, std::vector<DerivationTree>& out) {
    const std::size_t m = parts.size();
    if (j + 1 < m) {
        for (std::size_t k = 0; k <= remaining; ++k) {
            parts[j] = k;
            distribute(shape, parts, j + 1, remaining - k, out);
        }
        return;
    }
    parts[j] = remaining;

    // A child that is still being expanded closes a loop that consumes no
    // size. It contributes no trees now; if the loop could be completed
    // (all other children have trees) its root is flagged, and a flagged
    // root with any tree has infinitely many.
    std::vector<const std::vector<DerivationTree>*> lists;
    std::optional<std::pair<Symbol, std::size_t>> loop;
    bool empty = false;
    for (std::size_t i = 0; i < m; ++i) {
        auto key = std::make_pair(shape.children[i], parts[i]);
        if (in_progress_.contains(key)) {
            loop = key;
            continue;
        }
        lists.push_back(&by_offset(shape.children[i], parts[i]));
        empty = empty || lists.back()->empty();
    }
    if (loop) {
        if (!empty) {
            cyclic_.insert(*loop);
        }
        return;
    }
    if (empty) {
        return;
    }
    std::vector<std::size_t> pick(m, 0);
    while (true) {
        DerivationTree t{shape.production->name, {}};
        t.children.reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
            t.children.push_back((*lists[i])[pick[i]]);
        }
        out.push_back(std::move(t));
        std::size_t i = m;
        while (i > 0 && ++pick[i - 1] == lists[i - 1]->size()) {
            pick[i - 1] = 0;
            --i;
        }
        if (i == 0) {
            return;
        }
    }
}

std::vector<DerivationTree> enumerate_trees(const Grammar& grammar, const Symbol& nonterminal, std::size_t n,
                                            OracleOptions options) {
    Enumerator e(grammar, options);
    return e.trees(nonterminal, n);
}

SliceCensus census(Enumerator& enumerator, const Symbol& nonterminal, std::size_t n) {
    SliceCensus out;
    out.nonterminal = nonterminal;
    out.size = n;
    for (const auto& t : enumerator.trees(nonterminal, n)) {
        auto graph = yield_of(enumerator.grammar(), t);
        if (graph.size() != n) {
            throw InvariantBreach("oracle: tree yields size " + std::to_string(graph.size()) + ", expected " +
                                  std::to_string(n));
        }
        auto [it, inserted] = out.entries.try_emplace(canonical_form(graph));
        auto& entry = it->second;
        if (inserted) {
            entry.witness = t;
        } else if (!entry.second_witness) {
            entry.second_witness = t;
        }
        ++entry.multiplicity;
        ++out.total_trees;
    }
    out.total_graphs = out.entries.size();
    return out;
}

SliceCensus census(const Grammar& grammar, const Symbol& nonterminal, std::size_t n, OracleOptions options) {
    Enumerator e(grammar, options);
    return census(e, nonterminal, n);
}

AmbiguityVerdict check_n_ambiguity(const Grammar& grammar, std::size_t n, OracleOptions options) {
    AmbiguityVerdict v;
    v.size = n;
    auto c = census(grammar, grammar.start, n, options);
    for (auto& [form, entry] : c.entries) {
        if (entry.multiplicity >= 2) {
            v.ambiguous = true;
            v.witnesses.emplace(entry.witness, *entry.second_witness);
            v.canonical = form;
            break;
        }
    }
    return v;
}

CountTables oracle_tables(Enumerator& enumerator, std::size_t n_max) {
    const Grammar& g = enumerator.grammar();
    CountTables t;
    t.n_max = n_max;
    for (const auto& a : g.nonterminals) {
        t.m1[a].assign(n_max + 1, 0);
    }
    for (const auto& p : g.productions) {
        t.m2[p.name].assign(n_max + 1, 0);
    }
    for (const auto& a : g.nonterminals) {
        const auto type = g.typing.at(a);
        for (std::size_t l = 0; l <= n_max; ++l) {
            for (const auto& tree : enumerator.trees(a, l + type)) {
                ++t.m2[tree.production][l];
                ++t.m1[a][l];
            }
        }
    }
    return t;
}

json oracle_sidecar(const Grammar& grammar, OracleOptions options) {
    std::size_t widest = 0;
    for (const auto& a : grammar.nonterminals) {
        widest = std::max(widest, grammar.typing.at(a));
    }
    if (widest > options.cap) {
        throw RangeError("oracle: a nonterminal type exceeds the cap");
    }
    const std::size_t n_max = options.cap - widest;
    Enumerator e(grammar, options);
    json out = to_json(oracle_tables(e, n_max));
    json sizes = json::array();
    const auto type = grammar.typing.at(grammar.start);
    for (std::size_t l = 0; l <= n_max; ++l) {
        sizes.push_back(census(e, grammar.start, l + type).total_graphs);
    }
    out["slice_sizes"] = {{grammar.start, sizes}};
    return out;
}

json to_json(const SliceCensus& census) {
    json classes = json::array();
    for (const auto& [form, entry] : census.entries) {
        classes.push_back(
            {{"canonical", to_hex(form)}, {"multiplicity", entry.multiplicity}, {"witness", to_json(entry.witness)}});
    }
    return {{"nonterminal", census.nonterminal},
            {"size", census.size},
            {"total_trees", census.total_trees},
            {"total_graphs", census.total_graphs},
            {"classes", std::move(classes)}};
}

json to_json(const AmbiguityVerdict& verdict) {
    json out = {{"size", verdict.size}, {"ambiguous", verdict.ambiguous}};
    if (verdict.witnesses) {
        out["canonical"] = to_hex(verdict.canonical);
        out["witnesses"] = {to_json(verdict.witnesses->first), to_json(verdict.witnesses->second)};
    }
    return out;
}

}  // namespace hrgen
