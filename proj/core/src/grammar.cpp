#include "hrgen/grammar.hpp"

#include <algorithm>
#include <unordered_map>

#include "hrgen/error.hpp"

namespace hrgen {

std::strong_ordering DerivationTree::operator<=>(const DerivationTree& other) const {
    if (auto c = production <=> other.production; c != 0) {
        return c;
    }
    return std::lexicographical_compare_three_way(children.begin(), children.end(), other.children.begin(),
                                                  other.children.end());
}

const Production* Grammar::find(const std::string& name) const {
    for (const auto& p : productions) {
        if (p.name == name) {
            return &p;
        }
    }
    return nullptr;
}

std::vector<std::size_t> Grammar::productions_of(const Symbol& lhs) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < productions.size(); ++i) {
        if (productions[i].lhs == lhs) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<Violation> validate_grammar(const Grammar& g) {
    std::vector<Violation> out;

    for (const auto& s : g.nonterminals) {
        if (g.terminals.contains(s)) {
            out.push_back({"overlapping-alphabets", "symbol '" + s + "' is both terminal and nonterminal"});
        }
    }
    for (const auto* alphabet : {&g.nonterminals, &g.terminals}) {
        for (const auto& s : *alphabet) {
            if (!g.typing.defines(s)) {
                out.push_back({"untyped-symbol", "symbol '" + s + "' has no type"});
            }
        }
    }
    if (!g.nonterminals.contains(g.start)) {
        out.push_back({"bad-start", "start symbol '" + g.start + "' is not a nonterminal"});
    }

    std::set<std::string> names;
    for (const auto& p : g.productions) {
        const std::string where = "production " + p.name;
        if (!names.insert(p.name).second) {
            out.push_back({"duplicate-production-name", where + " is declared more than once"});
        }
        if (!g.nonterminals.contains(p.lhs)) {
            out.push_back({"bad-lhs", where + ": lhs '" + p.lhs + "' is not a nonterminal"});
        } else if (auto t = g.typing.arity(p.lhs); t && *t != p.rhs.type()) {
            out.push_back({"type-mismatch", where + ": rhs has type " + std::to_string(p.rhs.type()) +
                                                ", lhs has type " + std::to_string(*t)});
        }
        for (auto& v : validate(p.rhs, g.typing)) {
            out.push_back({v.code, where + ": " + v.message});
        }
        for (const auto& e : p.rhs.edges()) {
            if (!g.nonterminals.contains(e.label) && !g.terminals.contains(e.label)) {
                out.push_back({"unknown-symbol", where + ": label '" + e.label + "' is in neither alphabet"});
            }
        }

        // marks must be a bijection onto 1..|E|
        const std::size_t k = p.rhs.edge_count();
        std::vector<int> used(k + 1, 0);
        bool ok = p.marks.size() == k;
        for (const auto& [id, rank] : p.marks) {
            if (p.rhs.find_edge(id) == nullptr || rank < 1 || rank > k || used[rank]++ > 0) {
                ok = false;
            }
        }
        if (!ok) {
            out.push_back({"bad-marks", where + ": marks are not a bijection onto 1.." + std::to_string(k)});
        }
    }
    return out;
}

std::vector<const Edge*> edges_by_mark(const Production& p) {
    std::vector<const Edge*> out;
    out.reserve(p.rhs.edge_count());
    for (const auto& e : p.rhs.edges()) {
        out.push_back(&e);
    }
    auto rank = [&](const Edge* e) {
        auto it = p.marks.find(e->id);
        return it == p.marks.end() ? 0u : it->second;
    };
    std::stable_sort(out.begin(), out.end(), [&](const Edge* a, const Edge* b) { return rank(a) < rank(b); });
    return out;
}

std::vector<const Edge*> nonterminal_edges_by_mark(const Grammar& grammar, const Production& p) {
    auto all = edges_by_mark(p);
    std::erase_if(all, [&](const Edge* e) { return !grammar.is_nonterminal(e->label); });
    return all;
}

namespace {

class YieldBuilder {
public:
    explicit YieldBuilder(const Grammar& g) : g_(g) {
        for (const auto& p : g.productions) {
            by_name_.emplace(p.name, &p);
        }
    }

    Hypergraph build(const DerivationTree& t, const Symbol* expected_lhs) const {
        auto it = by_name_.find(t.production);
        if (it == by_name_.end()) {
            throw InputError("derivation tree names unknown production '" + t.production + "'");
        }
        const Production& p = *it->second;
        if (expected_lhs != nullptr && *expected_lhs != p.lhs) {
            throw InputError("derivation tree applies " + p.name + " (lhs " + p.lhs + ") to a '" + *expected_lhs +
                             "' edge");
        }
        auto slots = nonterminal_edges_by_mark(g_, p);
        if (slots.size() != t.children.size()) {
            throw InputError("derivation tree node " + p.name + " has " + std::to_string(t.children.size()) +
                             " children, expected " + std::to_string(slots.size()));
        }
        if (slots.empty()) {
            return p.rhs;
        }
        std::vector<Hypergraph> parts;
        parts.reserve(slots.size());
        for (std::size_t i = 0; i < slots.size(); ++i) {
            parts.push_back(build(t.children[i], &slots[i]->label));
        }
        std::vector<EdgeReplacement> assignment;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            assignment.push_back({slots[i]->id, &parts[i]});
        }
        return replace_all(p.rhs, assignment);
    }

private:
    const Grammar& g_;
    std::unordered_map<std::string, const Production*> by_name_;
};

void preorder(const DerivationTree& t, std::vector<std::string>& out) {
    out.push_back(t.production);
    for (const auto& c : t.children) {
        preorder(c, out);
    }
}

}  // namespace

Hypergraph yield_of(const Grammar& grammar, const DerivationTree& tree) {
    return YieldBuilder(grammar).build(tree, nullptr);
}

std::vector<std::string> leftmost_sequence(const DerivationTree& tree) {
    std::vector<std::string> out;
    preorder(tree, out);
    return out;
}

std::size_t tree_node_count(const DerivationTree& tree) {
    std::size_t n = 1;
    for (const auto& c : tree.children) {
        n += tree_node_count(c);
    }
    return n;
}

bool is_non_contracting(const Grammar& grammar) {
    return std::all_of(grammar.productions.begin(), grammar.productions.end(),
                       [](const Production& p) { return p.rhs.size() >= p.rhs.type() + 1; });
}

bool has_start_empty_production(const Grammar& grammar) {
    return std::any_of(grammar.productions.begin(), grammar.productions.end(),
                       [&](const Production& p) { return p.lhs == grammar.start && p.is_empty(); });
}

Hypergraph direct_derive(const Grammar& grammar, const Hypergraph& host, EdgeId edge, const Production& p) {
    (void)grammar;
    const Edge* e = host.find_edge(edge);
    if (e == nullptr) {
        throw InputError("no edge e" + std::to_string(edge.value) + " in host graph");
    }
    if (e->label != p.lhs) {
        throw InputError("cannot apply " + p.name + " (lhs " + p.lhs + ") to an edge labeled '" + e->label + "'");
    }
    return replace(host, edge, p.rhs);
}

}  // namespace hrgen
