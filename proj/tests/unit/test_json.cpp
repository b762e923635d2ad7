#include <doctest.h>

#include <fstream>

#include "support.hpp"

using namespace hrgen;

TEST_SUITE("json") {
    TEST_CASE("hypergraph round trip") {
        auto g = testing::term_graph();
        auto j = to_json(g);
        CHECK(hypergraph_from_json(j) == g);
        CHECK(to_json(hypergraph_from_json(j)) == j);
        CHECK(j["nodes"][0] == "v0");
        CHECK(j["edges"][0]["id"] == "e0");
    }

    TEST_CASE("names are arbitrary and renumbered by position") {
        json j = {{"nodes", {"x", "y"}},
                  {"ext", {"y"}},
                  {"edges", {{{"id", "first"}, {"label", "b"}, {"att", {"y", "x"}}}}}};
        auto g = hypergraph_from_json(j);
        CHECK(g == make_hypergraph(2, {{"b", {1, 0}}}, {1}));
    }

    TEST_CASE("an undeclared node is reported by validate") {
        json j = {{"nodes", {"x"}}, {"ext", json::array()}, {"edges", {{{"id", "e"}, {"label", "a"}, {"att", {"w"}}}}}};
        auto g = hypergraph_from_json(j);
        CHECK(has_violation(validate(g, TypingFunction{{"a", 1}}), "dangling-attachment"));
    }

    TEST_CASE("schema errors") {
        CHECK_THROWS_AS(hypergraph_from_json(json::array()), InputError);
        CHECK_THROWS_AS(hypergraph_from_json(json{{"nodes", 3}}), InputError);
        CHECK_THROWS_AS(tree_from_json(json{{"children", json::array()}}), InputError);
        auto j = to_json(testing::load_fixture("fig4_cnf"));
        j["productions"][0]["marks"] = {{"nope", 1}};
        CHECK_THROWS_AS(grammar_from_json(j), InputError);
    }

    TEST_CASE("grammar round trip for every fixture") {
        for (const char* name : {"fig4_cnf", "fig2_ambiguous", "fig3_unambiguous", "fig6_lemma_demo", "bouquet", "anbncn"}) {
            CAPTURE(name);
            auto g = testing::load_fixture(name);
            auto j = to_json(g);
            CHECK(grammar_from_json(j) == g);
            CHECK(to_json(grammar_from_json(j)) == j);
        }
    }

    TEST_CASE("tree round trip") {
        auto t = testing::term_graph_tree();
        CHECK(tree_from_json(to_json(t)) == t);
    }

    TEST_CASE("file errors") {
        CHECK_THROWS_AS(read_json_file("/nonexistent/hrgen.json"), InputError);
        auto path = std::filesystem::temp_directory_path() / "hrgen_json_test_bad.json";
        std::ofstream(path) << "{ not json";
        CHECK_THROWS_AS(read_json_file(path), InputError);
        std::filesystem::remove(path);
    }

    TEST_CASE("pretty printing ends with a newline") {
        CHECK(pretty(json{{"a", 1}}) == "{\n  \"a\": 1\n}\n");
    }
}
