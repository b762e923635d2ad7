#include <doctest.h>

#include "support.hpp"

using namespace hrgen;

namespace {

std::size_t count(const std::string& s, const std::string& what) {
    std::size_t n = 0;
    for (auto pos = s.find(what); pos != std::string::npos; pos = s.find(what, pos + 1)) {
        ++n;
    }
    return n;
}

}  // namespace

TEST_SUITE("dot") {
    TEST_CASE("a handle") {
        auto dot = to_dot(handle("B", 3), "h");
        CHECK(dot.rfind("graph \"h\" {", 0) == 0);
        CHECK(dot.back() == '\n');
        CHECK(count(dot, "shape=point") == 3);
        CHECK(count(dot, "shape=box") == 1);
        CHECK(dot.find("\"ext:1\"") != std::string::npos);
        CHECK(dot.find("\"ext:3\"") != std::string::npos);
        CHECK(dot.find("label=\"B\"") != std::string::npos);
        CHECK(dot.find("label=\"3\"") != std::string::npos);
    }

    TEST_CASE("nodes come before edges and output is stable") {
        auto g = testing::term_graph();
        auto dot = to_dot(g);
        CHECK(dot == to_dot(g));
        CHECK(dot.rfind("shape=point") < dot.find("shape=box"));
        CHECK(count(dot, "shape=box") == 6);
        CHECK(count(dot, " -- ") == 14);
    }

    TEST_CASE("labels are escaped") {
        auto dot = to_dot(make_hypergraph(1, {{"say \"hi\"", {0}}}, {}));
        CHECK(dot.find("say \\\"hi\\\"") != std::string::npos);
    }
}
