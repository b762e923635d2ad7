#include <doctest.h>

#include "support.hpp"

using namespace hrgen;

TEST_SUITE("grammar") {
    TEST_CASE("fixtures validate") {
        for (const char* name : {"fig4_cnf", "fig2_ambiguous", "fig3_unambiguous", "fig6_lemma_demo", "bouquet", "anbncn"}) {
            CAPTURE(name);
            CHECK(validate_grammar(testing::load_fixture(name)).empty());
        }
    }

    TEST_CASE("grammar violations") {
        auto g = testing::load_fixture("fig4_cnf");
        auto bad_type = g;
        bad_type.productions[2].rhs = make_hypergraph(2, {{"1", {0}}}, {0, 1});
        CHECK(has_violation(validate_grammar(bad_type), "type-mismatch"));

        auto bad_marks = g;
        for (auto& [edge, rank] : bad_marks.productions[0].marks) {
            rank = 1;
        }
        CHECK(has_violation(validate_grammar(bad_marks), "bad-marks"));

        auto dup = g;
        dup.productions[1].name = "P1";
        CHECK(has_violation(validate_grammar(dup), "duplicate-production-name"));

        auto bad_start = g;
        bad_start.start = "1";
        CHECK(has_violation(validate_grammar(bad_start), "bad-start"));

        auto overlap = g;
        overlap.terminals.insert("A");
        CHECK(has_violation(validate_grammar(overlap), "overlapping-alphabets"));

        auto unknown = g;
        unknown.productions[2].rhs = make_hypergraph(1, {{"q", {0}}}, {0});
        unknown.typing.set("q", 1);
        CHECK(has_violation(validate_grammar(unknown), "unknown-symbol"));

        auto lhs = g;
        lhs.productions[2].lhs = "+";
        CHECK(has_violation(validate_grammar(lhs), "bad-lhs"));
    }

    TEST_CASE("the term graph is the yield of its derivation tree") {
        auto g = testing::load_fixture("fig4_cnf");
        auto y = yield_of(g, testing::term_graph_tree());
        CHECK(y.size() == 12);
        CHECK(testing::naive_isomorphic(y, testing::term_graph()));
        CHECK(is_isomorphic(y, testing::term_graph()));
    }

    TEST_CASE("leftmost sequence is pre-order") {
        auto t = testing::term_graph_tree();
        CHECK(leftmost_sequence(t) ==
              std::vector<std::string>{"P1", "P8", "P5", "P10", "P4", "P9", "P7", "P3", "P2", "P6", "P3"});
        CHECK(tree_node_count(t) == 11);
        CHECK(leftmost_sequence(DerivationTree{"P3", {}}) == std::vector<std::string>{"P3"});
    }

    TEST_CASE("a leaf yields its rhs") {
        auto g = testing::load_fixture("fig4_cnf");
        CHECK(yield_of(g, DerivationTree{"P3", {}}) == g.find("P3")->rhs);
    }

    TEST_CASE("yield errors") {
        auto g = testing::load_fixture("fig4_cnf");
        CHECK_THROWS_AS(yield_of(g, DerivationTree{"P99", {}}), InputError);
        CHECK_THROWS_AS(yield_of(g, DerivationTree{"P1", {}}), InputError);
        // child for C must derive from C
        CHECK_THROWS_AS(yield_of(g, DerivationTree{"P1", {DerivationTree{"P3", {}}, DerivationTree{"P3", {}}}}),
                        InputError);
    }

    TEST_CASE("yield size follows from the tree") {
        // each node adds its rhs minus its external nodes; every nonterminal
        // edge except the root handle's is consumed by a child
        auto g = testing::load_fixture("fig4_cnf");
        Enumerator e(g);
        for (std::size_t n = 2; n <= 10; ++n) {
            for (const auto& t : e.trees("A", n)) {
                std::size_t sum = g.typing.at("A");
                std::function<void(const DerivationTree&)> walk = [&](const DerivationTree& node) {
                    const auto* p = g.find(node.production);
                    sum += p->rhs.size() - p->rhs.type();
                    for (const auto& c : node.children) {
                        walk(c);
                    }
                };
                walk(t);
                CHECK(yield_of(g, t).size() == sum - (tree_node_count(t) - 1));
            }
        }
    }

    TEST_CASE("distinct trees have distinct leftmost sequences") {
        auto g = testing::load_fixture("fig4_cnf");
        Enumerator e(g);
        for (std::size_t n = 2; n <= 10; n += 2) {
            std::set<std::vector<std::string>> seen;
            for (const auto& t : e.trees("A", n)) {
                seen.insert(leftmost_sequence(t));
            }
            CHECK(seen.size() == e.trees("A", n).size());
        }
    }

    TEST_CASE("non-contracting and start-empty checks") {
        CHECK(is_non_contracting(testing::load_fixture("fig4_cnf")));
        auto anbncn = testing::load_fixture("anbncn");
        CHECK_FALSE(is_non_contracting(anbncn));
        CHECK(has_start_empty_production(anbncn));
        CHECK_FALSE(has_start_empty_production(testing::load_fixture("fig4_cnf")));
    }

    TEST_CASE("direct derivation") {
        auto g = testing::load_fixture("fig4_cnf");
        auto a = handle("A", g.typing);
        auto r = direct_derive(g, a, EdgeId{0}, *g.find("P1"));
        CHECK(r == replace(a, EdgeId{0}, g.find("P1")->rhs));
        CHECK_THROWS_AS(direct_derive(g, a, EdgeId{0}, *g.find("P4")), InputError);
    }

    TEST_CASE("edges by mark") {
        auto g = testing::load_fixture("fig4_cnf");
        auto edges = nonterminal_edges_by_mark(g, *g.find("P1"));
        REQUIRE(edges.size() == 2);
        CHECK(edges[0]->label == "C");
        CHECK(edges[1]->label == "A");
    }
}
