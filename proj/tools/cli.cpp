#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hrgen/hrgen.hpp"

namespace hrgen::cli {

namespace {

struct RunConfig {
    std::string command;
    std::string grammar_path;
    std::string start;
    std::size_t size = 0;
    std::size_t count = 1;
    std::string seed = std::to_string(kDefaultSeed);
    std::string format = "json";
    std::string render_format = "dot";
    std::string cache;
    std::size_t oracle_cap = kDefaultOracleCap;
    std::string output;
    std::string input;
    bool trace = false;
    bool sidecar = false;
    bool check_ambiguity = false;
    std::vector<std::size_t> sizes{200, 400, 800, 1600};
    std::size_t samples = 200;
};

class Session {
public:
    Session(const RunConfig& config, std::ostream& out, std::ostream& err) : config_(config), err_(err) {
        if (!config.output.empty()) {
            file_.open(config.output);
            if (!file_) {
                throw InputError("cannot write " + config.output);
            }
            out_ = &file_;
        } else {
            out_ = &out;
        }
    }

    int dispatch() {
        const auto& c = config_.command;
        if (c == "normalize") {
            return normalize();
        }
        if (c == "count") {
            return count();
        }
        if (c == "sample") {
            return sample();
        }
        if (c == "enumerate") {
            return enumerate();
        }
        if (c == "check-ambiguity") {
            return check_ambiguity();
        }
        if (c == "bench") {
            return bench();
        }
        return render();
    }

private:
    Grammar load() {
        Grammar g = load_grammar(config_.grammar_path);
        auto violations = validate_grammar(g);
        if (!violations.empty()) {
            for (const auto& v : violations) {
                err_ << "violation [" << v.code << "]: " << v.message << "\n";
            }
            throw InputError(config_.grammar_path + " is not a valid grammar");
        }
        return g;
    }

    Grammar load_cnf() {
        Grammar g = load();
        if (is_cnf(g).empty()) {
            return g;
        }
        auto result = to_cnf(g);
        if (!result.changed) {
            for (const auto& d : result.diagnostics) {
                err_ << "note: " << d << "\n";
            }
            throw InputError("cannot bring " + config_.grammar_path + " into CNF");
        }
        err_ << "note: grammar is not in CNF; normalized it first (" << result.grammar.productions.size()
             << " productions)\n";
        return std::move(result.grammar);
    }

    Symbol start_of(const Grammar& g) const {
        Symbol a = config_.start.empty() ? g.start : config_.start;
        if (!g.is_nonterminal(a)) {
            throw InputError("unknown start symbol " + a);
        }
        return a;
    }

    std::size_t budget_for(const Grammar& g, const Symbol& a) const {
        const auto type = g.typing.at(a);
        if (config_.size < type) {
            throw RangeError("size " + std::to_string(config_.size) + " is below type(" + a +
                             ") = " + std::to_string(type));
        }
        return config_.size - type;
    }

    CountTables tables_for(const Grammar& g, std::size_t n) const {
        return config_.cache.empty() ? pre(g, n) : pre_cached(g, n, config_.cache);
    }

    std::uint64_t seed() {
        if (config_.seed == "random") {
            std::random_device rd;
            const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) | rd();
            err_ << "seed: " << s << "\n";
            return s;
        }
        std::size_t used = 0;
        std::uint64_t s = 0;
        try {
            s = std::stoull(config_.seed, &used, 0);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != config_.seed.size()) {
            throw InputError("--seed expects a number or \"random\", got '" + config_.seed + "'");
        }
        return s;
    }

    int normalize() {
        Grammar g = load();
        auto result = to_cnf(g);
        for (const auto& d : result.diagnostics) {
            err_ << "note: " << d << "\n";
        }
        if (config_.trace) {
            for (const auto& line : result.trace) {
                err_ << "trace: " << line << "\n";
            }
        }
        *out_ << pretty(to_json(result.grammar));
        return kOk;
    }

    int count() {
        if (config_.size < 1) {
            throw InputError("--size must be at least 1");
        }
        Grammar g = load_cnf();
        *out_ << pretty(to_json(tables_for(g, config_.size)));
        return kOk;
    }

    int sample() {
        Grammar g = load_cnf();
        const Symbol a = start_of(g);
        const std::size_t budget = budget_for(g, a);
        const auto tables = tables_for(g, budget);
        if (config_.check_ambiguity) {
            if (config_.size <= config_.oracle_cap) {
                Grammar from_a = g;
                from_a.start = a;
                auto verdict = check_n_ambiguity(from_a, config_.size, {config_.oracle_cap});
                if (verdict.ambiguous) {
                    err_ << "warning: the grammar is ambiguous at size " << config_.size
                         << "; samples are uniform over derivations, not over hypergraphs\n";
                }
            } else {
                err_ << "note: size " << config_.size << " exceeds the oracle cap " << config_.oracle_cap
                     << "; ambiguity not checked\n";
            }
        }
        const Sampler sampler(g, tables);
        const RandomSource base(seed());
        for (std::size_t i = 0; i < config_.count; ++i) {
            auto rng = base.split(i);
            auto report = sampler.gen(a, config_.size, rng);
            if (!report) {
                throw EmptySliceError(a, config_.size);
            }
            if (config_.format == "dot") {
                *out_ << to_dot(report->graph, "sample" + std::to_string(i));
            } else {
                *out_ << to_json(*report).dump() << "\n";
            }
        }
        return kOk;
    }

    int enumerate() {
        Grammar g = load();
        const OracleOptions options{config_.oracle_cap};
        if (config_.sidecar) {
            *out_ << pretty(oracle_sidecar(g, options));
            return kOk;
        }
        *out_ << pretty(to_json(census(g, start_of(g), config_.size, options)));
        return kOk;
    }

    int check_ambiguity() {
        Grammar g = load_cnf();
        g.start = start_of(g);
        *out_ << pretty(to_json(check_n_ambiguity(g, config_.size, {config_.oracle_cap})));
        return kOk;
    }

    int bench() {
        using Clock = std::chrono::steady_clock;
        Grammar g = load_cnf();
        const Symbol a = start_of(g);
        const auto type = g.typing.at(a);
        const RandomSource base(seed());
        *out_ << "n\tpre_ms\tmedian_ms\tratio\n";
        double previous = 0;
        for (std::size_t n : config_.sizes) {
            if (n < type) {
                throw RangeError("bench size " + std::to_string(n) + " is below type(" + a + ")");
            }
            auto t0 = Clock::now();
            const auto tables = pre(g, n - type);
            const double pre_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
            const Sampler sampler(g, tables);
            std::vector<double> times;
            for (std::size_t i = 0; i < config_.samples; ++i) {
                auto rng = base.split(i);
                auto s0 = Clock::now();
                auto report = sampler.gen(a, n, rng);
                times.push_back(std::chrono::duration<double, std::milli>(Clock::now() - s0).count());
                if (!report) {
                    throw EmptySliceError(a, n);
                }
            }
            std::sort(times.begin(), times.end());
            const double median = times.empty() ? 0.0 : times[times.size() / 2];
            *out_ << n << "\t" << std::fixed << std::setprecision(3) << pre_ms << "\t" << median << "\t";
            if (previous > 0) {
                *out_ << std::setprecision(2) << median / previous;
            } else {
                *out_ << "-";
            }
            *out_ << "\n";
            previous = median;
        }
        return kOk;
    }

    int render() {
        std::ifstream in(config_.input);
        if (!in) {
            throw InputError("cannot open " + config_.input);
        }
        std::stringstream buffer;
        buffer << in.rdbuf();
        std::vector<json> docs;
        try {
            docs.push_back(json::parse(buffer.str()));
        } catch (const json::exception&) {
            // JSON Lines, as written by `sample`
            std::string line;
            std::istringstream lines(buffer.str());
            while (std::getline(lines, line)) {
                if (line.find_first_not_of(" \t\r") == std::string::npos) {
                    continue;
                }
                try {
                    docs.push_back(json::parse(line));
                } catch (const json::exception& e) {
                    throw InputError(config_.input + ": " + e.what());
                }
            }
        }
        for (std::size_t i = 0; i < docs.size(); ++i) {
            const json& doc = docs[i].contains("graph") ? docs[i]["graph"] : docs[i];
            Hypergraph graph = hypergraph_from_json(doc);
            if (config_.render_format == "dot") {
                *out_ << to_dot(graph, docs.size() == 1 ? "H" : "H" + std::to_string(i));
            } else {
                *out_ << to_json(graph).dump() << "\n";
            }
        }
        return kOk;
    }

    const RunConfig& config_;
    std::ostream& err_;
    std::ofstream file_;
    std::ostream* out_ = nullptr;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig config;
    config.oracle_cap = default_oracle_cap();

    CLI::App app{"Uniform random generation of hypergraphs from hyperedge replacement grammars", "hrgen"};
    app.require_subcommand(1, 1);

    auto grammar_opt = [&](CLI::App* cmd) {
        cmd->add_option("--grammar,-g", config.grammar_path, "grammar JSON file")->required()->check(CLI::ExistingFile);
    };
    auto output_opt = [&](CLI::App* cmd) { cmd->add_option("--output,-o", config.output, "write here instead of stdout"); };
    auto start_opt = [&](CLI::App* cmd) {
        cmd->add_option("--start", config.start, "nonterminal to derive from (default: the grammar's start)");
    };
    auto cap_opt = [&](CLI::App* cmd) {
        cmd->add_option("--oracle-cap", config.oracle_cap, "largest size the oracle enumerates (env HRGEN_ORACLE_CAP)")
            ->check(CLI::PositiveNumber);
    };
    auto seed_opt = [&](CLI::App* cmd) {
        cmd->add_option("--seed", config.seed, "number, or \"random\"")->capture_default_str();
    };

    auto* normalize = app.add_subcommand("normalize", "convert a grammar to Chomsky normal form");
    grammar_opt(normalize);
    output_opt(normalize);
    normalize->add_flag("--trace", config.trace, "print the applied rewrites on stderr");

    auto* count = app.add_subcommand("count", "build the derivation count tables for columns 0..size");
    grammar_opt(count);
    output_opt(count);
    count->add_option("--size,-n", config.size, "largest column")->required();
    count->add_option("--cache", config.cache, "table cache file");

    auto* sample = app.add_subcommand("sample", "draw hypergraphs of a given size");
    grammar_opt(sample);
    output_opt(sample);
    start_opt(sample);
    cap_opt(sample);
    seed_opt(sample);
    sample->add_option("--size,-n", config.size, "size |V| + |E| of every sample")->required();
    sample->add_option("--count,-c", config.count, "number of samples")->capture_default_str();
    sample->add_option("--format,-f", config.format, "json or dot")
        ->check(CLI::IsMember({"json", "dot"}))
        ->capture_default_str();
    sample->add_option("--cache", config.cache, "table cache file");
    sample->add_flag("--check-ambiguity", config.check_ambiguity, "warn when the oracle finds the slice ambiguous");

    auto* enumerate = app.add_subcommand("enumerate", "list the isomorphism classes of a language slice");
    grammar_opt(enumerate);
    output_opt(enumerate);
    start_opt(enumerate);
    cap_opt(enumerate);
    auto* enum_size = enumerate->add_option("--size,-n", config.size, "slice size");
    auto* sidecar = enumerate->add_flag("--sidecar", config.sidecar,
                                        "emit expected counts for every nonterminal up to the oracle cap");
    enum_size->excludes(sidecar);

    auto* ambiguity = app.add_subcommand("check-ambiguity", "decide whether a language slice is ambiguous");
    grammar_opt(ambiguity);
    output_opt(ambiguity);
    start_opt(ambiguity);
    cap_opt(ambiguity);
    ambiguity->add_option("--size,-n", config.size, "slice size")->required();

    auto* bench = app.add_subcommand("bench", "median sampling time per size, tables excluded");
    grammar_opt(bench);
    output_opt(bench);
    start_opt(bench);
    seed_opt(bench);
    bench->add_option("--sizes", config.sizes, "sizes to time")->delimiter(',')->capture_default_str();
    bench->add_option("--samples", config.samples, "samples per size")->capture_default_str();

    auto* render = app.add_subcommand("render", "print hypergraphs (or sample reports) as DOT or JSON");
    output_opt(render);
    render->add_option("--input,-i", config.input, "hypergraph JSON or JSON Lines")->required()->check(CLI::ExistingFile);
    render->add_option("--format,-f", config.render_format, "dot or json")
        ->check(CLI::IsMember({"json", "dot"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }
    config.command = app.get_subcommands().front()->get_name();
    if (config.command == "enumerate" && !config.sidecar && enum_size->count() == 0) {
        err << "error: enumerate needs --size or --sidecar\n";
        return kInputError;
    }

    try {
        Session session(config, out, err);
        return session.dispatch();
    } catch (const EmptySliceError& e) {
        err << "error: " << e.what() << "\n";
        return kEmptySlice;
    } catch (const InvariantBreach& e) {
        err << "internal error: " << e.what() << "\n";
        return kInvariantBreach;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace hrgen::cli
