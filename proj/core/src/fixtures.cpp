#include "hrgen/fixtures.hpp"

namespace hrgen {

namespace {

std::map<EdgeId, unsigned> ranks(std::size_t k) {
    std::map<EdgeId, unsigned> out;
    for (std::uint32_t i = 0; i < k; ++i) {
        out[EdgeId{i}] = i + 1;
    }
    return out;
}

}  // namespace

Grammar build_anbncn_grammar() {
    Grammar g;
    g.typing = {{"S", 2}, {"A", 6}, {"a", 2}, {"b", 2}, {"c", 2}};
    g.nonterminals = {"S", "A"};
    g.terminals = {"a", "b", "c"};
    g.start = "S";

    // S: x=0 y=1 m1=2 m2=3
    g.productions.push_back({"P0", "S", make_hypergraph(2, {}, {0, 1}), {}});
    g.productions.push_back({"P1", "S", make_hypergraph(4, {{"A", {0, 2, 2, 3, 3, 1}}}, {0, 1}), ranks(1)});
    // A: x1..x6 = 0..5, u=6 v=7 w=8
    g.productions.push_back({"P2", "A",
                             make_hypergraph(9,
                                             {{"a", {0, 6}}, {"b", {2, 7}}, {"c", {4, 8}}, {"A", {6, 1, 7, 3, 8, 5}}},
                                             {0, 1, 2, 3, 4, 5}),
                             ranks(4)});
    g.productions.push_back(
        {"P3", "A", make_hypergraph(6, {{"a", {0, 1}}, {"b", {2, 3}}, {"c", {4, 5}}}, {0, 1, 2, 3, 4, 5}), ranks(3)});
    return g;
}

}  // namespace hrgen
