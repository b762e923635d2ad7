#include "hrgen/counting.hpp"

#include <fstream>

#include <openssl/evp.h>

#include "hrgen/error.hpp"

namespace hrgen {

CountTables pre(const Grammar& grammar, std::size_t n) { return pre(grammar, shorthand(grammar), n); }

CountTables pre(const Grammar& grammar, const std::vector<ShorthandProduction>& shorthands, std::size_t n) {
    if (!is_cnf(grammar).empty()) {
        throw InputError("pre: grammar is not in CNF");
    }
    CountTables t;
    t.n_max = n;
    for (const auto& a : grammar.nonterminals) {
        t.m1[a].assign(n + 1, 0);
    }
    for (const auto& p : shorthands) {
        t.m2[p.name].assign(n + 1, 0);
        std::vector<Symbol> used{p.lhs};
        if (p.kind == ShorthandKind::NonTerminal) {
            used.push_back(p.first);
            used.push_back(p.second);
        }
        for (const auto& s : used) {
            if (!t.m1.contains(s)) {
                throw InputError("pre: production " + p.name + " uses unknown nonterminal " + s);
            }
        }
    }

    mpz_class product;
    for (std::size_t l = 0; l <= n; ++l) {
        for (const auto& p : shorthands) {
            mpz_class& cell = t.m2[p.name][l];
            switch (p.kind) {
                case ShorthandKind::Terminal:
                    if (l == p.internal + 1) {
                        cell = 1;
                    }
                    break;
                case ShorthandKind::Lambda:
                    if (l == p.internal) {
                        cell = 1;
                    }
                    break;
                case ShorthandKind::NonTerminal: {
                    if (l < p.internal + 2) {
                        break;
                    }
                    const std::size_t rest = l - p.internal;
                    const auto& b = t.m1[p.first];
                    const auto& c = t.m1[p.second];
                    for (std::size_t k = 1; k < rest; ++k) {
                        if (sgn(b[k]) == 0 || sgn(c[rest - k]) == 0) {
                            continue;
                        }
                        mpz_mul(product.get_mpz_t(), b[k].get_mpz_t(), c[rest - k].get_mpz_t());
                        cell += product;
                    }
                    break;
                }
            }
        }
        for (const auto& p : shorthands) {
            t.m1[p.lhs][l] += t.m2[p.name][l];
        }
    }
    return t;
}

const mpz_class& table_lookup(const CountTables& tables, const Symbol& nonterminal, std::size_t l) {
    if (l > tables.n_max) {
        throw RangeError("table_lookup: l = " + std::to_string(l) + " exceeds n_max = " + std::to_string(tables.n_max));
    }
    auto it = tables.m1.find(nonterminal);
    if (it == tables.m1.end()) {
        throw InputError("table_lookup: unknown nonterminal " + nonterminal);
    }
    return it->second[l];
}

std::vector<std::pair<std::string, mpz_class>> production_weights(const CountTables& tables, const Grammar& grammar,
                                                                  const Symbol& nonterminal, std::size_t l) {
    if (l > tables.n_max) {
        throw RangeError("production_weights: l = " + std::to_string(l) +
                         " exceeds n_max = " + std::to_string(tables.n_max));
    }
    std::vector<std::pair<std::string, mpz_class>> out;
    for (const auto& p : grammar.productions) {
        if (p.lhs != nonterminal) {
            continue;
        }
        auto it = tables.m2.find(p.name);
        if (it == tables.m2.end()) {
            throw InputError("production_weights: tables have no row for " + p.name);
        }
        out.emplace_back(p.name, it->second[l]);
    }
    return out;
}

namespace {

json row_to_json(const std::vector<mpz_class>& row) {
    json out = json::array();
    for (const auto& v : row) {
        out.push_back(v.get_str());
    }
    return out;
}

std::vector<mpz_class> row_from_json(const json& j, std::size_t width) {
    if (!j.is_array() || j.size() != width) {
        throw InputError("count tables: row of wrong shape");
    }
    std::vector<mpz_class> row;
    row.reserve(width);
    for (const auto& v : j) {
        if (!v.is_string()) {
            throw InputError("count tables: entries must be decimal strings");
        }
        mpz_class x;
        if (x.set_str(v.get<std::string>(), 10) != 0 || sgn(x) < 0) {
            throw InputError("count tables: bad entry " + v.dump());
        }
        row.push_back(std::move(x));
    }
    return row;
}

}  // namespace

json to_json(const CountTables& tables) {
    json m1 = json::object();
    for (const auto& [a, row] : tables.m1) {
        m1[a] = row_to_json(row);
    }
    json m2 = json::object();
    for (const auto& [p, row] : tables.m2) {
        m2[p] = row_to_json(row);
    }
    return {{"n_max", tables.n_max}, {"m1", std::move(m1)}, {"m2", std::move(m2)}};
}

CountTables tables_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n_max") || !j.contains("m1") || !j.contains("m2") ||
        !j["n_max"].is_number_unsigned() || !j["m1"].is_object() || !j["m2"].is_object()) {
        throw InputError("count tables: expected {\"n_max\", \"m1\", \"m2\"}");
    }
    CountTables t;
    t.n_max = j["n_max"].get<std::size_t>();
    for (const auto& [a, row] : j["m1"].items()) {
        t.m1[a] = row_from_json(row, t.n_max + 1);
    }
    for (const auto& [p, row] : j["m2"].items()) {
        t.m2[p] = row_from_json(row, t.n_max + 1);
    }
    return t;
}

std::string cache_key(const Grammar& grammar, std::size_t n) {
    const std::string text = to_json(grammar).dump() + "\n" + std::to_string(n);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw Error("cache_key: SHA-256 failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

CountTables pre_cached(const Grammar& grammar, std::size_t n, const std::filesystem::path& cache_file) {
    const auto key = cache_key(grammar, n);
    if (std::filesystem::exists(cache_file)) {
        try {
            auto j = read_json_file(cache_file);
            if (j.is_object() && j.value("key", "") == key && j.contains("tables")) {
                return tables_from_json(j["tables"]);
            }
        } catch (const Error&) {
            // fall through and rebuild
        }
    }
    auto tables = pre(grammar, n);
    std::ofstream out(cache_file);
    if (out) {
        out << json{{"key", key}, {"tables", to_json(tables)}}.dump() << "\n";
    }
    return tables;
}

}  // namespace hrgen
