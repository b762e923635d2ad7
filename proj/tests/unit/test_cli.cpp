#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

using namespace hrgen;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "hrgen");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string fixture(const char* name) { return testing::fixture_path(std::string(name) + ".json").string(); }

std::vector<json> lines(const std::string& text) {
    std::vector<json> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out.push_back(json::parse(line));
    }
    return out;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("help and usage errors") {
        CHECK(run({"--help"}).code == cli::kOk);
        CHECK(run({}).code == cli::kInputError);
        CHECK(run({"frobnicate"}).code == cli::kInputError);
        CHECK(run({"sample", "-g", fixture("fig4_cnf")}).code == cli::kInputError);
        CHECK(run({"sample", "-g", "/nonexistent.json", "-n", "2"}).code == cli::kInputError);
        CHECK(run({"enumerate", "-g", fixture("fig4_cnf")}).code == cli::kInputError);
    }

    TEST_CASE("count") {
        auto r = run({"count", "-g", fixture("fig4_cnf"), "-n", "12"});
        REQUIRE(r.code == cli::kOk);
        auto t = tables_from_json(json::parse(r.out));
        CHECK(t == pre(testing::load_fixture("fig4_cnf"), 12));
    }

    TEST_CASE("sample output") {
        auto r = run({"sample", "-g", fixture("fig4_cnf"), "-n", "2", "-c", "3", "--seed", "7"});
        REQUIRE(r.code == cli::kOk);
        auto docs = lines(r.out);
        REQUIRE(docs.size() == 3);
        for (const auto& d : docs) {
            CHECK(d == docs[0]);
            auto g = hypergraph_from_json(d["graph"]);
            CHECK(g.size() == 2);
            CHECK(to_json(g) == d["graph"]);
        }
    }

    TEST_CASE("sampling is reproducible and round-trips") {
        std::vector<std::string> args{"sample", "-g", fixture("fig4_cnf"), "-n", "10", "-c", "25", "--seed", "31"};
        auto a = run(args);
        auto b = run(args);
        REQUIRE(a.code == cli::kOk);
        CHECK(a.out == b.out);
        for (const auto& d : lines(a.out)) {
            auto g = hypergraph_from_json(d["graph"]);
            CHECK(g.size() == 10);
            CHECK(to_json(g) == d["graph"]);
            CHECK(validate(g, testing::load_fixture("fig4_cnf").typing).empty());
        }
        auto dot = run({"sample", "-g", fixture("fig4_cnf"), "-n", "6", "-c", "2", "--format", "dot"});
        REQUIRE(dot.code == cli::kOk);
        CHECK(dot.out.find("graph \"sample0\"") != std::string::npos);
        CHECK(dot.out.find("graph \"sample1\"") != std::string::npos);
    }

    TEST_CASE("random seeds are reported") {
        auto r = run({"sample", "-g", fixture("fig4_cnf"), "-n", "4", "--seed", "random"});
        CHECK(r.code == cli::kOk);
        CHECK(r.err.find("seed: ") != std::string::npos);
    }

    TEST_CASE("empty slice") {
        auto r = run({"sample", "-g", fixture("fig4_cnf"), "-n", "3"});
        CHECK(r.code == cli::kEmptySlice);
        CHECK(r.err.find("size 3") != std::string::npos);
        CHECK(r.err.find("A") != std::string::npos);
    }

    TEST_CASE("non-CNF grammars are normalized before sampling") {
        auto r = run({"sample", "-g", fixture("anbncn"), "-n", "13", "-c", "4", "--seed", "3"});
        REQUIRE(r.code == cli::kOk);
        CHECK(r.err.find("normalized") != std::string::npos);
        for (const auto& d : lines(r.out)) {
            CHECK(testing::string_graph_word(hypergraph_from_json(d["graph"])) == std::string("aabbcc"));
        }
    }

    TEST_CASE("malformed and invalid input") {
        auto bad = temp_file("hrgen_cli_bad.json", "{ nope");
        CHECK(run({"count", "-g", bad.string(), "-n", "3"}).code == cli::kInputError);

        auto g = to_json(testing::load_fixture("fig4_cnf"));
        g["productions"][2]["rhs"]["ext"] = {"v0", "v0"};
        auto invalid = temp_file("hrgen_cli_invalid.json", g.dump());
        auto r = run({"count", "-g", invalid.string(), "-n", "3"});
        CHECK(r.code == cli::kInputError);
        CHECK(r.err.find("violation [") != std::string::npos);
        std::filesystem::remove(bad);
        std::filesystem::remove(invalid);
    }

    TEST_CASE("normalize") {
        auto same = run({"normalize", "-g", fixture("fig4_cnf")});
        REQUIRE(same.code == cli::kOk);
        CHECK(same.err.find("already in CNF") != std::string::npos);
        CHECK(grammar_from_json(json::parse(same.out)) == testing::load_fixture("fig4_cnf"));

        auto r = run({"normalize", "-g", fixture("fig6_lemma_demo"), "--trace"});
        REQUIRE(r.code == cli::kOk);
        CHECK(r.err.find("trace: rule 3") != std::string::npos);
        CHECK(is_cnf(grammar_from_json(json::parse(r.out))).empty());
        CHECK(r.out == slurp(testing::fixture_path("golden/fig6_lemma_demo.cnf.json")));

        auto path = std::filesystem::temp_directory_path() / "hrgen_cli_normalized.json";
        CHECK(run({"normalize", "-g", fixture("fig6_lemma_demo"), "-o", path.string()}).code == cli::kOk);
        CHECK(slurp(path) == r.out);
        std::filesystem::remove(path);
    }

    TEST_CASE("enumerate and check-ambiguity") {
        auto r = run({"enumerate", "-g", fixture("fig4_cnf"), "-n", "6"});
        REQUIRE(r.code == cli::kOk);
        CHECK(json::parse(r.out)["total_graphs"] == 14);

        auto side = run({"enumerate", "-g", fixture("bouquet"), "--sidecar"});
        REQUIRE(side.code == cli::kOk);
        CHECK(json::parse(side.out) == testing::load_sidecar("bouquet"));

        auto amb = run({"check-ambiguity", "-g", fixture("fig2_ambiguous"), "-n", "8"});
        REQUIRE(amb.code == cli::kOk);
        CHECK(json::parse(amb.out)["ambiguous"] == true);

        CHECK(run({"enumerate", "-g", fixture("fig4_cnf"), "-n", "6", "--oracle-cap", "5"}).code == cli::kInputError);
        setenv("HRGEN_ORACLE_CAP", "5", 1);
        CHECK(run({"enumerate", "-g", fixture("fig4_cnf"), "-n", "6"}).code == cli::kInputError);
        unsetenv("HRGEN_ORACLE_CAP");
    }

    TEST_CASE("render") {
        auto samples = run({"sample", "-g", fixture("fig4_cnf"), "-n", "4", "-c", "2"});
        REQUIRE(samples.code == cli::kOk);
        auto path = temp_file("hrgen_cli_samples.jsonl", samples.out);
        auto dot = run({"render", "-i", path.string()});
        REQUIRE(dot.code == cli::kOk);
        CHECK(dot.out.find("graph \"H0\"") != std::string::npos);
        CHECK(dot.out.find("graph \"H1\"") != std::string::npos);
        auto js = run({"render", "-i", path.string(), "--format", "json"});
        REQUIRE(js.code == cli::kOk);
        auto docs = lines(js.out);
        auto reports = lines(samples.out);
        REQUIRE(docs.size() == 2);
        CHECK(docs[0] == reports[0]["graph"]);
        std::filesystem::remove(path);
    }

    TEST_CASE("cache and bench") {
        auto cache = std::filesystem::temp_directory_path() / "hrgen_cli_cache.json";
        std::filesystem::remove(cache);
        auto a = run({"sample", "-g", fixture("fig4_cnf"), "-n", "8", "-c", "3", "--cache", cache.string()});
        REQUIRE(a.code == cli::kOk);
        CHECK(std::filesystem::exists(cache));
        auto b = run({"sample", "-g", fixture("fig4_cnf"), "-n", "8", "-c", "3", "--cache", cache.string()});
        CHECK(a.out == b.out);
        std::filesystem::remove(cache);

        auto bench = run({"bench", "-g", fixture("bouquet"), "--sizes", "20,40", "--samples", "5"});
        REQUIRE(bench.code == cli::kOk);
        CHECK(std::count(bench.out.begin(), bench.out.end(), '\n') == 3);
    }
}
