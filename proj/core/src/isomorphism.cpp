#include "hrgen/isomorphism.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <utility>

#include "hrgen/error.hpp"

namespace hrgen {

namespace {

using Coloring = std::vector<std::uint32_t>;

void put_varint(std::string& out, std::uint64_t value) {
    while (value >= 0x80) {
        out.push_back(static_cast<char>((value & 0x7f) | 0x80));
        value >>= 7;
    }
    out.push_back(static_cast<char>(value));
}

struct LocalEdge {
    std::uint32_t label = 0;  // rank among the graph's distinct labels
    std::vector<std::uint32_t> att;
};

using EdgeKey = std::pair<std::uint32_t, std::vector<std::uint32_t>>;

class Canonizer {
public:
    explicit Canonizer(const Hypergraph& graph) {
        std::unordered_map<NodeId, std::uint32_t> position;
        position.reserve(graph.node_count());
        for (std::uint32_t i = 0; i < graph.node_count(); ++i) {
            if (!position.emplace(graph.nodes()[i], i).second) {
                throw InputError("canonical_form: duplicate node id");
            }
        }
        auto pos_of = [&](NodeId v) {
            auto it = position.find(v);
            if (it == position.end()) {
                throw InputError("canonical_form: reference to unknown node");
            }
            return it->second;
        };

        for (const Edge& e : graph.edges()) {
            labels_.push_back(e.label);
        }
        std::sort(labels_.begin(), labels_.end());
        labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());

        // Active nodes: external ones first (in ext order), then every
        // internal node with at least one incidence, in graph order.
        std::vector<std::int64_t> active(graph.node_count(), -1);
        std::uint32_t count = 0;
        for (NodeId v : graph.ext()) {
            auto p = pos_of(v);
            if (active[p] >= 0) {
                throw InputError("canonical_form: repeated external node");
            }
            active[p] = count++;
        }
        external_ = count;
        for (const Edge& e : graph.edges()) {
            for (NodeId v : e.att) {
                auto p = pos_of(v);
                if (active[p] < 0) {
                    active[p] = count++;
                }
            }
        }
        active_ = count;
        isolated_ = graph.node_count() - count;

        incidences_.resize(active_);
        for (const Edge& e : graph.edges()) {
            LocalEdge local;
            local.label = static_cast<std::uint32_t>(
                std::lower_bound(labels_.begin(), labels_.end(), e.label) - labels_.begin());
            for (NodeId v : e.att) {
                local.att.push_back(static_cast<std::uint32_t>(active[pos_of(v)]));
            }
            const auto index = static_cast<std::uint32_t>(edges_.size());
            for (std::uint32_t t = 0; t < local.att.size(); ++t) {
                incidences_[local.att[t]].push_back({index, t});
            }
            edges_.push_back(std::move(local));
        }
    }

    std::string run() {
        Coloring colors(active_);
        for (std::uint32_t v = 0; v < active_; ++v) {
            colors[v] = v < external_ ? v : external_;
        }
        refine(colors);
        search(colors);
        return encode();
    }

private:
    // Iterated color refinement. The new color of a node is the rank of
    // (old color, sorted incidence signatures) so colors stay canonical and
    // each round refines the previous partition.
    void refine(Coloring& colors) const {
        std::size_t classes = distinct(colors);
        std::vector<std::vector<std::uint32_t>> signature(active_);
        std::vector<std::vector<std::uint32_t>> items;
        while (true) {
            for (std::uint32_t v = 0; v < active_; ++v) {
                items.clear();
                for (auto [edge, tentacle] : incidences_[v]) {
                    const LocalEdge& e = edges_[edge];
                    std::vector<std::uint32_t> item{e.label, tentacle,
                                                    static_cast<std::uint32_t>(e.att.size())};
                    for (auto u : e.att) {
                        item.push_back(colors[u]);
                    }
                    items.push_back(std::move(item));
                }
                std::sort(items.begin(), items.end());
                auto& sig = signature[v];
                sig.clear();
                sig.push_back(colors[v]);
                for (const auto& item : items) {
                    sig.insert(sig.end(), item.begin(), item.end());
                    sig.push_back(~0u);
                }
            }
            std::vector<std::uint32_t> order(active_);
            std::iota(order.begin(), order.end(), 0u);
            std::sort(order.begin(), order.end(),
                      [&](std::uint32_t a, std::uint32_t b) { return signature[a] < signature[b]; });
            std::uint32_t rank = 0;
            for (std::size_t i = 0; i < order.size(); ++i) {
                if (i > 0 && signature[order[i]] != signature[order[i - 1]]) {
                    ++rank;
                }
                colors[order[i]] = rank;
            }
            const std::size_t now = active_ == 0 ? 0 : rank + 1;
            if (now == classes) {
                return;
            }
            classes = now;
        }
    }

    static std::size_t distinct(const Coloring& colors) {
        Coloring copy = colors;
        std::sort(copy.begin(), copy.end());
        return static_cast<std::size_t>(std::unique(copy.begin(), copy.end()) - copy.begin());
    }

    void search(const Coloring& colors) {
        // Smallest color shared by more than one node.
        std::vector<std::uint32_t> cell_size(active_, 0);
        for (auto c : colors) {
            ++cell_size[c];
        }
        std::uint32_t target = 0;
        while (target < active_ && cell_size[target] <= 1) {
            ++target;
        }
        if (target == active_) {
            consider_leaf(colors);
            return;
        }
        for (std::uint32_t v = 0; v < active_; ++v) {
            if (colors[v] != target) {
                continue;
            }
            Coloring next = colors;
            for (std::uint32_t u = 0; u < active_; ++u) {
                if (colors[u] > target || (colors[u] == target && u != v)) {
                    ++next[u];
                }
            }
            refine(next);
            search(next);
        }
    }

    void consider_leaf(const Coloring& colors) {
        std::vector<EdgeKey> keys;
        keys.reserve(edges_.size());
        for (const LocalEdge& e : edges_) {
            EdgeKey key{e.label, {}};
            key.second.reserve(e.att.size());
            for (auto u : e.att) {
                key.second.push_back(colors[u]);
            }
            keys.push_back(std::move(key));
        }
        std::sort(keys.begin(), keys.end());
        if (!best_ || keys < *best_) {
            best_ = std::move(keys);
        }
    }

    std::string encode() const {
        std::string out = "HG1";
        put_varint(out, active_ + isolated_);
        put_varint(out, external_);
        put_varint(out, isolated_);
        put_varint(out, edges_.size());
        if (best_) {
            for (const auto& [label, att] : *best_) {
                const std::string& name = labels_[label];
                put_varint(out, name.size());
                out += name;
                put_varint(out, att.size());
                for (auto u : att) {
                    put_varint(out, u);
                }
            }
        }
        return out;
    }

    std::vector<std::string> labels_;
    std::vector<LocalEdge> edges_;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> incidences_;
    std::uint32_t external_ = 0;
    std::uint32_t active_ = 0;
    std::size_t isolated_ = 0;
    std::optional<std::vector<EdgeKey>> best_;
};

}  // namespace

std::string canonical_form(const Hypergraph& graph) {
    if (graph.size() > kCanonicalSizeBound) {
        throw RangeError("canonical_form: size " + std::to_string(graph.size()) + " exceeds bound " +
                         std::to_string(kCanonicalSizeBound));
    }
    return Canonizer(graph).run();
}

bool is_isomorphic(const Hypergraph& lhs, const Hypergraph& rhs) {
    if (lhs.node_count() != rhs.node_count() || lhs.edge_count() != rhs.edge_count() ||
        lhs.type() != rhs.type()) {
        return false;
    }
    return canonical_form(lhs) == canonical_form(rhs);
}

std::string to_hex(const std::string& bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char c : bytes) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

}  // namespace hrgen
