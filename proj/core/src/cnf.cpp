#include "hrgen/cnf.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "hrgen/error.hpp"
#include "hrgen/isomorphism.hpp"
#include "hrgen/json_io.hpp"

namespace hrgen {

namespace {

constexpr std::size_t kMaxNullableEdges = 16;
constexpr std::size_t kMaxUnitForms = 10000;

bool is_unit(const Grammar& g, const Production& p) {
    return p.rhs.edge_count() == 1 && g.is_nonterminal(p.rhs.edges()[0].label);
}

// A -> A• with nothing else; derives nothing new.
bool is_identity(const Production& p) {
    if (p.rhs.edge_count() != 1 || p.rhs.node_count() != p.rhs.type()) {
        return false;
    }
    const Edge& e = p.rhs.edges()[0];
    return e.label == p.lhs && e.att == p.rhs.ext();
}

std::string edge_phrase(const Production& p, const Edge& e) {
    auto it = p.marks.find(e.id);
    return "'" + e.label + "' edge of rank " + std::to_string(it == p.marks.end() ? 0 : it->second);
}

// Nodes and edges renumbered by position; marks follow their edges.
Production compacted(const Production& p) {
    std::unordered_map<NodeId, NodeId> node_map;
    std::vector<NodeId> nodes;
    for (std::uint32_t i = 0; i < p.rhs.node_count(); ++i) {
        node_map.emplace(p.rhs.nodes()[i], NodeId{i});
        nodes.push_back(NodeId{i});
    }
    std::vector<Edge> edges;
    std::map<EdgeId, unsigned> marks;
    for (std::uint32_t i = 0; i < p.rhs.edge_count(); ++i) {
        const Edge& e = p.rhs.edges()[i];
        Edge copy{EdgeId{i}, e.label, {}};
        for (NodeId v : e.att) {
            copy.att.push_back(node_map.at(v));
        }
        edges.push_back(std::move(copy));
        if (auto it = p.marks.find(e.id); it != p.marks.end()) {
            marks[EdgeId{i}] = it->second;
        }
    }
    std::vector<NodeId> ext;
    for (NodeId v : p.rhs.ext()) {
        ext.push_back(node_map.at(v));
    }
    return Production{p.name, p.lhs, Hypergraph(std::move(nodes), std::move(edges), std::move(ext)), std::move(marks)};
}

// p's rhs without the given edges; remaining ranks closed up.
Production without_edges(const Production& p, const std::vector<EdgeId>& drop) {
    Production out = p;
    out.rhs = remove_edges(p.rhs, drop);
    out.marks.clear();
    unsigned rank = 1;
    for (const Edge* e : edges_by_mark(p)) {
        if (std::find(drop.begin(), drop.end(), e->id) == drop.end()) {
            out.marks[e->id] = rank++;
        }
    }
    return out;
}

std::string production_key(const Production& p) {
    if (p.rhs.size() <= kCanonicalSizeBound) {
        return p.lhs + '\0' + canonical_form(p.rhs);
    }
    return p.lhs + '\1' + to_json(compacted(p).rhs).dump();
}

std::set<Symbol> productive_symbols(const Grammar& g) {
    std::set<Symbol> out;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.productions) {
            if (out.contains(p.lhs)) {
                continue;
            }
            bool ok = std::all_of(p.rhs.edges().begin(), p.rhs.edges().end(), [&](const Edge& e) {
                return !g.is_nonterminal(e.label) || out.contains(e.label);
            });
            if (ok) {
                out.insert(p.lhs);
                changed = true;
            }
        }
    }
    return out;
}

std::set<Symbol> reachable_symbols(const Grammar& g) {
    std::set<Symbol> out{g.start};
    std::deque<Symbol> queue{g.start};
    while (!queue.empty()) {
        auto a = queue.front();
        queue.pop_front();
        for (const auto& p : g.productions) {
            if (p.lhs != a) {
                continue;
            }
            for (const auto& e : p.rhs.edges()) {
                if (g.is_nonterminal(e.label) && out.insert(e.label).second) {
                    queue.push_back(e.label);
                }
            }
        }
    }
    return out;
}

class Normalizer {
public:
    explicit Normalizer(const Grammar& g) : g_(g) {
        for (const auto& [s, a] : g.typing.entries()) {
            used_symbols_.insert(s);
        }
        used_symbols_.insert(g.nonterminals.begin(), g.nonterminals.end());
        used_symbols_.insert(g.terminals.begin(), g.terminals.end());
        for (const auto& p : g.productions) {
            used_names_.insert(p.name);
        }
    }

    CnfResult run() {
        CnfResult result;
        cleanup();
        remove_empty_productions();
        remove_units();
        split_long_rhs();
        outline_terminals();
        cleanup();
        for (auto& p : g_.productions) {
            p = compacted(p);
        }
        auto violations = is_cnf(g_);
        if (!violations.empty()) {
            throw InvariantBreach("to_cnf produced a non-CNF grammar: " + violations.front().message);
        }
        result.grammar = std::move(g_);
        result.trace = std::move(trace_);
        result.changed = true;
        return result;
    }

private:
    Symbol fresh_symbol(const std::string& prefix, std::size_t arity) {
        Symbol s;
        do {
            s = prefix + std::to_string(next_symbol_++);
        } while (used_symbols_.contains(s));
        used_symbols_.insert(s);
        g_.nonterminals.insert(s);
        g_.typing.set(s, arity);
        return s;
    }

    std::string fresh_name() {
        std::string s;
        do {
            s = "_p" + std::to_string(next_name_++);
        } while (used_names_.contains(s));
        used_names_.insert(s);
        return s;
    }

    // Appends p unless an isomorphic production with the same lhs exists.
    // A production with an empty name gets a fresh one when kept.
    bool add_unique(std::vector<Production>& out, std::set<std::string>& keys, Production p) {
        if (!keys.insert(production_key(p)).second) {
            return false;
        }
        if (p.name.empty()) {
            p.name = fresh_name();
        }
        out.push_back(std::move(p));
        return true;
    }

    void cleanup() {
        auto productive = productive_symbols(g_);
        std::vector<Production> kept;
        for (auto& p : g_.productions) {
            bool ok = productive.contains(p.lhs) &&
                      std::all_of(p.rhs.edges().begin(), p.rhs.edges().end(), [&](const Edge& e) {
                          return !g_.is_nonterminal(e.label) || productive.contains(e.label);
                      });
            if (ok) {
                kept.push_back(std::move(p));
            } else {
                trace_.push_back("cleanup: removed unproductive production " + p.name);
            }
        }
        g_.productions = std::move(kept);

        auto reachable = reachable_symbols(g_);
        std::erase_if(g_.productions, [&](const Production& p) {
            if (reachable.contains(p.lhs)) {
                return false;
            }
            trace_.push_back("cleanup: removed unreachable production " + p.name);
            return true;
        });

        std::set<Symbol> keep;
        for (const auto& s : g_.nonterminals) {
            if (s == g_.start || (reachable.contains(s) && productive.contains(s))) {
                keep.insert(s);
            }
        }
        TypingFunction typing;
        for (const auto& [s, a] : g_.typing.entries()) {
            if (keep.contains(s) || g_.terminals.contains(s)) {
                typing.set(s, a);
            }
        }
        g_.nonterminals = std::move(keep);
        g_.typing = std::move(typing);
    }

    void remove_empty_productions() {
        std::set<Symbol> nullable;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& p : g_.productions) {
                if (nullable.contains(p.lhs) || p.rhs.internal_node_count() != 0) {
                    continue;
                }
                bool all = std::all_of(p.rhs.edges().begin(), p.rhs.edges().end(),
                                       [&](const Edge& e) { return nullable.contains(e.label); });
                if (all) {
                    nullable.insert(p.lhs);
                    changed = true;
                }
            }
        }
        if (nullable.empty()) {
            return;
        }

        std::string start_empty_name;
        std::vector<Production> out;
        std::set<std::string> keys;
        for (const auto& p : g_.productions) {
            std::vector<EdgeId> candidates;
            for (const auto& e : p.rhs.edges()) {
                if (nullable.contains(e.label)) {
                    candidates.push_back(e.id);
                }
            }
            if (candidates.size() > kMaxNullableEdges) {
                throw InputError("production " + p.name + " has too many nullable edges to expand");
            }
            for (std::size_t mask = 0; mask < (std::size_t{1} << candidates.size()); ++mask) {
                std::vector<EdgeId> drop;
                for (std::size_t b = 0; b < candidates.size(); ++b) {
                    if (mask & (std::size_t{1} << b)) {
                        drop.push_back(candidates[b]);
                    }
                }
                Production v = drop.empty() ? p : without_edges(p, drop);
                if (v.is_empty()) {
                    if (drop.empty() && p.lhs == g_.start) {
                        start_empty_name = p.name;
                    } else if (drop.empty()) {
                        trace_.push_back("rule 1: removed empty production " + p.name);
                    }
                    continue;
                }
                if (is_identity(v)) {
                    continue;
                }
                std::string note;
                if (!drop.empty()) {
                    v.name.clear();
                    for (auto id : drop) {
                        note += (note.empty() ? "" : ", ") + edge_phrase(p, *p.rhs.find_edge(id));
                    }
                }
                if (add_unique(out, keys, std::move(v)) && !drop.empty()) {
                    trace_.push_back("rule 1: " + out.back().name + " = " + p.name + " without its " + note);
                }
            }
        }
        g_.productions = std::move(out);

        if (!nullable.contains(g_.start)) {
            return;
        }
        const auto type = g_.typing.at(g_.start);
        std::vector<std::uint32_t> ext(type);
        for (std::uint32_t i = 0; i < type; ++i) {
            ext[i] = i;
        }
        const Hypergraph empty = make_hypergraph(type, {}, ext);
        bool referenced = std::any_of(g_.productions.begin(), g_.productions.end(), [&](const Production& p) {
            return std::any_of(p.rhs.edges().begin(), p.rhs.edges().end(),
                               [&](const Edge& e) { return e.label == g_.start; });
        });
        if (!referenced) {
            g_.productions.push_back(
                {start_empty_name.empty() ? fresh_name() : start_empty_name, g_.start, empty, {}});
            trace_.push_back("rule 1: kept empty production " + g_.productions.back().name + " for start symbol " +
                             g_.start);
            return;
        }
        const Symbol old_start = g_.start;
        const Symbol s0 = fresh_symbol("_S", type);
        g_.start = s0;
        Production unit{fresh_name(), s0, handle(old_start, type), {{EdgeId{0}, 1u}}};
        Production eps{start_empty_name.empty() ? fresh_name() : start_empty_name, s0, empty, {}};
        trace_.push_back("rule 1: new start symbol " + s0 + " with " + unit.name + ": " + s0 + " -> " + old_start +
                         " and empty production " + eps.name);
        g_.productions.insert(g_.productions.begin(), std::move(eps));
        g_.productions.insert(g_.productions.begin(), std::move(unit));
    }

    void remove_units() {
        const std::vector<Production> base = g_.productions;
        if (std::none_of(base.begin(), base.end(), [&](const Production& p) { return is_unit(g_, p); })) {
            return;
        }
        std::vector<Production> out;
        std::set<std::string> keys;
        for (const auto& p : base) {
            if (!is_unit(g_, p)) {
                add_unique(out, keys, p);
            }
        }

        std::vector<Symbol> owners;
        for (const auto& p : base) {
            if (is_unit(g_, p) && std::find(owners.begin(), owners.end(), p.lhs) == owners.end()) {
                owners.push_back(p.lhs);
            }
        }
        for (const auto& a : owners) {
            std::set<std::string> seen{canonical_form(handle(a, g_.typing))};
            std::deque<Hypergraph> queue;
            for (const auto& p : base) {
                if (p.lhs == a && is_unit(g_, p)) {
                    trace_.push_back("rule 2: removed unit production " + p.name);
                    if (seen.insert(canonical_form(p.rhs)).second) {
                        queue.push_back(p.rhs);
                    }
                }
            }
            std::size_t processed = 0;
            while (!queue.empty()) {
                if (++processed > kMaxUnitForms) {
                    throw InputError("unit productions of " + a + " derive unboundedly many unit forms");
                }
                Hypergraph u = std::move(queue.front());
                queue.pop_front();
                const Edge e = u.edges()[0];
                for (const auto& q : base) {
                    if (q.lhs != e.label) {
                        continue;
                    }
                    Hypergraph w = replace(u, e.id, q.rhs);
                    std::map<EdgeId, unsigned> marks;
                    for (std::size_t j = 0; j < w.edge_count(); ++j) {
                        marks[w.edges()[j].id] = q.marks.at(q.rhs.edges()[j].id);
                    }
                    Production candidate{"", a, std::move(w), std::move(marks)};
                    if (is_unit(g_, candidate)) {
                        if (candidate.rhs.size() > kCanonicalSizeBound) {
                            throw InputError("unit productions of " + a + " derive unboundedly large unit forms");
                        }
                        if (seen.insert(canonical_form(candidate.rhs)).second) {
                            queue.push_back(std::move(candidate.rhs));
                        }
                        continue;
                    }
                    if (add_unique(out, keys, std::move(candidate))) {
                        trace_.push_back("rule 2: " + out.back().name + " = " + a + " through " + e.label +
                                         " with " + q.name);
                    }
                }
            }
        }
        g_.productions = std::move(out);
    }

    void split_long_rhs() {
        std::vector<Production> out;
        std::deque<Production> work(g_.productions.begin(), g_.productions.end());
        while (!work.empty()) {
            Production p = std::move(work.front());
            work.pop_front();
            if (p.rhs.edge_count() <= 2) {
                out.push_back(std::move(p));
                continue;
            }
            auto sorted = edges_by_mark(p);
            std::vector<NodeId> ext;
            for (std::size_t j = 1; j < sorted.size(); ++j) {
                for (NodeId v : sorted[j]->att) {
                    if (std::find(ext.begin(), ext.end(), v) == ext.end()) {
                        ext.push_back(v);
                    }
                }
            }
            const Symbol t = fresh_symbol("_T", ext.size());

            std::vector<Edge> moved;
            std::map<EdgeId, unsigned> moved_marks;
            for (std::size_t j = 1; j < sorted.size(); ++j) {
                const EdgeId id{static_cast<std::uint32_t>(j - 1)};
                moved.push_back(Edge{id, sorted[j]->label, sorted[j]->att});
                moved_marks[id] = static_cast<unsigned>(j);
            }
            Production child{fresh_name(), t, Hypergraph(ext, std::move(moved), ext), std::move(moved_marks)};

            std::vector<Edge> kept{Edge{EdgeId{0}, sorted[0]->label, sorted[0]->att}, Edge{EdgeId{1}, t, ext}};
            trace_.push_back("rule 3: " + p.name + " keeps its " + edge_phrase(p, *sorted[0]) + ", the other " +
                             std::to_string(sorted.size() - 1) + " edges move to " + child.name + ": " + t);
            p.rhs = Hypergraph(p.rhs.nodes(), std::move(kept), p.rhs.ext());
            p.marks = {{EdgeId{0}, 1u}, {EdgeId{1}, 2u}};
            out.push_back(std::move(p));
            work.push_back(std::move(child));
        }
        g_.productions = std::move(out);
    }

    void outline_terminals() {
        std::map<Symbol, Symbol> outlined;
        std::vector<Production> added;
        for (auto& p : g_.productions) {
            if (p.rhs.edge_count() < 2) {
                continue;
            }
            std::vector<Edge> edges = p.rhs.edges();
            bool touched = false;
            for (auto& e : edges) {
                if (!g_.is_terminal(e.label)) {
                    continue;
                }
                auto it = outlined.find(e.label);
                if (it == outlined.end()) {
                    const auto arity = g_.typing.at(e.label);
                    const Symbol t = fresh_symbol("_T", arity);
                    Production h{fresh_name(), t, handle(e.label, arity), {{EdgeId{0}, 1u}}};
                    trace_.push_back("rule 4: " + h.name + ": " + t + " -> " + e.label);
                    added.push_back(std::move(h));
                    it = outlined.emplace(e.label, t).first;
                }
                trace_.push_back("rule 4: " + p.name + " uses " + it->second + " in place of its '" + e.label +
                                 "' edge");
                e.label = it->second;
                touched = true;
            }
            if (touched) {
                p.rhs = Hypergraph(p.rhs.nodes(), std::move(edges), p.rhs.ext());
            }
        }
        for (auto& h : added) {
            g_.productions.push_back(std::move(h));
        }
    }

    Grammar g_;
    std::vector<std::string> trace_;
    std::set<Symbol> used_symbols_;
    std::set<std::string> used_names_;
    std::size_t next_symbol_ = 1;
    std::size_t next_name_ = 1;
};

}  // namespace

std::string to_string(const ShorthandProduction& p) {
    std::string body;
    switch (p.kind) {
        case ShorthandKind::NonTerminal:
            body = p.first + p.second;
            break;
        case ShorthandKind::Terminal:
            body = p.first;
            break;
        case ShorthandKind::Lambda:
            body = "λ";
            break;
    }
    return p.lhs + " ->" + p.name + " " + body + "," + std::to_string(p.internal);
}

std::vector<Violation> is_cnf(const Grammar& g) {
    std::vector<Violation> out;
    bool start_in_rhs = false;
    for (const auto& p : g.productions) {
        for (const auto& e : p.rhs.edges()) {
            start_in_rhs = start_in_rhs || e.label == g.start;
        }
    }
    for (const auto& p : g.productions) {
        const std::string where = "production " + p.name;
        const auto& edges = p.rhs.edges();
        switch (edges.size()) {
            case 0:
                if (p.is_empty()) {
                    if (p.lhs != g.start) {
                        out.push_back({"empty-production", where + " is empty and " + p.lhs + " is not the start"});
                    } else if (start_in_rhs) {
                        out.push_back({"empty-production",
                                       where + " is empty but the start symbol occurs in a right-hand side"});
                    }
                }
                break;
            case 1:
                if (!g.is_terminal(edges[0].label)) {
                    out.push_back({"unit-production", where + " has a single nonterminal edge"});
                }
                break;
            case 2:
                if (!g.is_nonterminal(edges[0].label) || !g.is_nonterminal(edges[1].label)) {
                    out.push_back({"terminal-in-binary", where + " has two edges but not both are nonterminal"});
                }
                break;
            default:
                out.push_back({"too-many-edges", where + " has " + std::to_string(edges.size()) + " edges"});
        }
    }
    return out;
}

CnfResult to_cnf(const Grammar& grammar) {
    auto violations = validate_grammar(grammar);
    if (!violations.empty()) {
        throw InputError("grammar is not valid: " + violations.front().message);
    }
    if (is_cnf(grammar).empty()) {
        return {grammar, {}, {"already in CNF"}, false};
    }
    if (!productive_symbols(grammar).contains(grammar.start)) {
        return {grammar, {}, {"start symbol " + grammar.start + " generates no terminal hypergraph"}, false};
    }
    return Normalizer(grammar).run();
}

std::vector<ShorthandProduction> shorthand(const Grammar& grammar) {
    auto violations = is_cnf(grammar);
    if (!violations.empty()) {
        throw InputError("grammar is not in CNF: " + violations.front().message);
    }
    std::vector<ShorthandProduction> out;
    out.reserve(grammar.productions.size());
    for (const auto& p : grammar.productions) {
        ShorthandProduction s;
        s.name = p.name;
        s.lhs = p.lhs;
        s.internal = p.rhs.node_count() - p.rhs.type();
        auto edges = edges_by_mark(p);
        if (edges.empty()) {
            s.kind = ShorthandKind::Lambda;
        } else if (edges.size() == 1) {
            s.kind = ShorthandKind::Terminal;
            s.first = edges[0]->label;
        } else {
            s.kind = ShorthandKind::NonTerminal;
            s.first = edges[0]->label;
            s.second = edges[1]->label;
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace hrgen
