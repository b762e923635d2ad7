#include "hrgen/sampler.hpp"

#include <algorithm>

#include "hrgen/cnf.hpp"

namespace hrgen {

EmptySliceError::EmptySliceError(Symbol nonterminal, std::size_t size)
    : Error("no hypergraph of size " + std::to_string(size) + " derives from " + nonterminal),
      nonterminal_(std::move(nonterminal)),
      size_(size) {}

Sampler::Sampler(const Grammar& grammar, const CountTables& tables, SamplerOptions options)
    : grammar_(grammar), tables_(tables), options_(options) {
    const auto shorthands = shorthand(grammar);
    nonterminals_.assign(grammar.nonterminals.begin(), grammar.nonterminals.end());
    for (const auto& a : nonterminals_) {
        arity_.push_back(grammar.typing.at(a));
        auto it = tables.m1.find(a);
        if (it == tables.m1.end()) {
            throw InputError("count tables have no row for nonterminal " + a);
        }
        m1_.push_back(&it->second);
    }
    rules_.resize(nonterminals_.size());

    for (std::size_t pi = 0; pi < grammar.productions.size(); ++pi) {
        const Production& p = grammar.productions[pi];
        const ShorthandProduction& s = shorthands[pi];
        Rule rule;
        rule.production = &p;
        auto it = tables.m2.find(p.name);
        if (it == tables.m2.end()) {
            throw InputError("count tables have no row for production " + p.name);
        }
        rule.weight = &it->second;
        rule.internal = s.internal;

        const auto type = static_cast<std::uint32_t>(p.rhs.type());
        std::uint32_t next_internal = type;
        std::map<NodeId, std::uint32_t> slot;
        for (std::uint32_t i = 0; i < type; ++i) {
            slot[p.rhs.ext()[i]] = i;
        }
        for (NodeId v : p.rhs.nodes()) {
            if (!slot.contains(v)) {
                slot[v] = next_internal++;
            }
        }
        for (const Edge* e : edges_by_mark(p)) {
            std::vector<std::uint32_t> att;
            for (NodeId v : e->att) {
                att.push_back(slot.at(v));
            }
            rule.edges.emplace_back(e->label, std::move(att));
        }
        if (s.kind == ShorthandKind::NonTerminal) {
            rule.binary = true;
            rule.first = index_of(s.first);
            rule.second = index_of(s.second);
        }
        rules_[index_of(p.lhs)].push_back(std::move(rule));
    }
}

std::size_t Sampler::index_of(const Symbol& nonterminal) const {
    auto it = std::lower_bound(nonterminals_.begin(), nonterminals_.end(), nonterminal);
    if (it == nonterminals_.end() || *it != nonterminal) {
        throw InputError("unknown nonterminal " + nonterminal);
    }
    return static_cast<std::size_t>(it - nonterminals_.begin());
}

std::optional<SampleReport> Sampler::gen(const Symbol& nonterminal, std::size_t n, RandomSource& rng) const {
    const std::size_t root = index_of(nonterminal);
    if (n < arity_[root]) {
        throw RangeError("size " + std::to_string(n) + " is below type(" + nonterminal + ") = " +
                         std::to_string(arity_[root]));
    }
    const std::size_t budget = n - arity_[root];
    if (budget > tables_.n_max) {
        throw RangeError("size " + std::to_string(n) + " needs tables up to " + std::to_string(budget) +
                         ", built up to " + std::to_string(tables_.n_max));
    }
    if (sgn((*m1_[root])[budget]) == 0) {
        return std::nullopt;
    }

    struct Task {
        std::size_t nonterminal;
        std::size_t budget;
        std::vector<std::uint32_t> att;
        std::ptrdiff_t parent;
    };
    struct TreeNode {
        const Production* production;
        std::vector<std::size_t> children;
    };

    std::vector<Edge> edges;
    std::vector<TreeNode> tree;
    std::vector<Choice> choices;
    std::uint32_t node_count = static_cast<std::uint32_t>(arity_[root]);
    std::vector<std::uint32_t> root_att(node_count);
    for (std::uint32_t i = 0; i < node_count; ++i) {
        root_att[i] = i;
    }
    std::vector<Task> stack{{root, budget, std::move(root_att), -1}};
    mpz_class total;
    mpz_class r;
    mpz_class w;

    while (!stack.empty()) {
        Task task = std::move(stack.back());
        stack.pop_back();
        const auto& rules = rules_[task.nonterminal];
        const std::size_t l = task.budget;
        const mpz_class& expected = (*m1_[task.nonterminal])[l];

        total = 0;
        for (const auto& rule : rules) {
            total += (*rule.weight)[l];
        }
        if (total != expected || sgn(total) == 0) {
            throw InvariantBreach("production weights of " + nonterminals_[task.nonterminal] + " at " +
                                  std::to_string(l) + " sum to " + total.get_str() + ", table says " +
                                  expected.get_str());
        }
        r = rng.uniform_below(total);
        const Rule* chosen = nullptr;
        for (const auto& rule : rules) {
            const mpz_class& weight = (*rule.weight)[l];
            if (r < weight) {
                chosen = &rule;
                break;
            }
            r -= weight;
        }
        if (chosen == nullptr) {
            throw InvariantBreach("production draw fell outside the weights");
        }

        const std::size_t me = tree.size();
        tree.push_back({chosen->production, {}});
        if (task.parent >= 0) {
            tree[static_cast<std::size_t>(task.parent)].children.push_back(me);
        }

        std::vector<std::uint32_t> image = task.att;
        for (std::size_t k = 0; k < chosen->internal; ++k) {
            image.push_back(node_count++);
        }
        auto mapped = [&](const std::vector<std::uint32_t>& slots) {
            std::vector<std::uint32_t> out;
            out.reserve(slots.size());
            for (auto s : slots) {
                out.push_back(image[s]);
            }
            return out;
        };

        if (!chosen->binary) {
            for (const auto& [label, att] : chosen->edges) {
                Edge e{EdgeId{static_cast<std::uint32_t>(edges.size())}, label, {}};
                for (auto v : mapped(att)) {
                    e.att.push_back(NodeId{v});
                }
                edges.push_back(std::move(e));
            }
            choices.push_back({choices.size(), chosen->production->name, std::nullopt});
            continue;
        }

        const std::size_t rest = l - chosen->internal;
        const auto& b = *m1_[chosen->first];
        const auto& c = *m1_[chosen->second];
        const mpz_class& weight = (*chosen->weight)[l];
        if (options_.check_weights) {
            total = 0;
            for (std::size_t k = 1; k < rest; ++k) {
                mpz_mul(w.get_mpz_t(), b[k].get_mpz_t(), c[rest - k].get_mpz_t());
                total += w;
            }
            if (total != weight) {
                throw InvariantBreach("split weights of " + chosen->production->name + " at " + std::to_string(l) +
                                      " sum to " + total.get_str() + ", table says " + weight.get_str());
            }
        }
        r = rng.uniform_below(weight);
        std::size_t split = 0;
        for (std::size_t k = 1; k < rest; ++k) {
            if (sgn(b[k]) == 0 || sgn(c[rest - k]) == 0) {
                continue;
            }
            mpz_mul(w.get_mpz_t(), b[k].get_mpz_t(), c[rest - k].get_mpz_t());
            if (r < w) {
                split = k;
                break;
            }
            r -= w;
        }
        if (split == 0) {
            throw InvariantBreach("split draw of " + chosen->production->name + " fell outside the weights");
        }
        choices.push_back({choices.size(), chosen->production->name, split});
        // rank 2 first so that rank 1 is expanded next (pre-order)
        stack.push_back({chosen->second, rest - split, mapped(chosen->edges[1].second), static_cast<std::ptrdiff_t>(me)});
        stack.push_back({chosen->first, split, mapped(chosen->edges[0].second), static_cast<std::ptrdiff_t>(me)});
    }

    SampleReport report;
    std::vector<NodeId> nodes(node_count);
    for (std::uint32_t i = 0; i < node_count; ++i) {
        nodes[i] = NodeId{i};
    }
    std::vector<NodeId> ext(arity_[root]);
    for (std::uint32_t i = 0; i < ext.size(); ++i) {
        ext[i] = NodeId{i};
    }
    report.graph = Hypergraph(std::move(nodes), std::move(edges), std::move(ext));

    // children are appended in pre-order, so build bottom-up by index
    std::vector<DerivationTree> built(tree.size());
    for (std::size_t i = tree.size(); i-- > 0;) {
        built[i].production = tree[i].production->name;
        for (auto child : tree[i].children) {
            built[i].children.push_back(std::move(built[child]));
        }
    }
    report.tree = std::move(built[0]);
    report.choices = std::move(choices);
    return report;
}

std::optional<SampleReport> gen(const Grammar& grammar, const CountTables& tables, const Symbol& nonterminal,
                                std::size_t n, RandomSource& rng, SamplerOptions options) {
    return Sampler(grammar, tables, options).gen(nonterminal, n, rng);
}

std::vector<SampleReport> sample_many(const Grammar& grammar, const CountTables& tables, const Symbol& nonterminal,
                                      std::size_t n, std::uint64_t seed, std::size_t count, SamplerOptions options) {
    std::vector<SampleReport> out;
    if (count == 0) {
        return out;
    }
    const Sampler sampler(grammar, tables, options);
    const RandomSource base(seed);
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        auto rng = base.split(i);
        auto report = sampler.gen(nonterminal, n, rng);
        if (!report) {
            throw EmptySliceError(nonterminal, n);
        }
        out.push_back(std::move(*report));
    }
    return out;
}

json to_json(const SampleReport& report) {
    json choices = json::array();
    for (const auto& c : report.choices) {
        choices.push_back({{"step", c.step},
                           {"production", c.production},
                           {"split", c.split ? json(*c.split) : json(nullptr)}});
    }
    return {{"graph", to_json(report.graph)}, {"tree", to_json(report.tree)}, {"choices", std::move(choices)}};
}

}  // namespace hrgen
