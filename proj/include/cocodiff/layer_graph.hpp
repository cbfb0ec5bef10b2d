#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cocodiff {

using node_t = std::int32_t;

/// Immutable undirected simple graph in compressed adjacency form.
/// Neighbor lists are sorted; symmetry and simplicity are enforced at
/// construction.
class LayerGraph {
public:
    LayerGraph() = default;

    /// Build from an undirected edge list. Rejects self-loops, duplicate
    /// edges and out-of-range endpoints.
    static LayerGraph from_edges(node_t n, std::vector<std::pair<node_t, node_t>> edges) {
        if (n < 0) throw std::invalid_argument("node count must be non-negative");
        std::vector<node_t> degree(static_cast<std::size_t>(n), 0);
        for (auto& [u, v] : edges) {
            if (u == v) throw std::invalid_argument("self-loop in edge list");
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw std::invalid_argument("edge endpoint out of range");
            if (u > v) std::swap(u, v);
            ++degree[static_cast<std::size_t>(u)];
            ++degree[static_cast<std::size_t>(v)];
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw std::invalid_argument("duplicate edge in edge list");

        LayerGraph g;
        g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
        for (node_t i = 0; i < n; ++i)
            g.offsets_[static_cast<std::size_t>(i) + 1] =
                g.offsets_[static_cast<std::size_t>(i)] + degree[static_cast<std::size_t>(i)];
        g.neighbors_.resize(static_cast<std::size_t>(g.offsets_.back()));
        std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
        for (auto [u, v] : edges) {
            g.neighbors_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(u)]++)] = v;
            g.neighbors_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(v)]++)] = u;
        }
        for (node_t i = 0; i < n; ++i) {
            auto nb = g.mutable_neighbors(i);
            std::sort(nb.begin(), nb.end());
        }
        g.edge_count_ = static_cast<std::int64_t>(edges.size());
        return g;
    }

    node_t node_count() const { return static_cast<node_t>(offsets_.size()) - 1; }
    std::int64_t edge_count() const { return edge_count_; }

    node_t degree(node_t i) const {
        return static_cast<node_t>(offsets_[static_cast<std::size_t>(i) + 1] -
                                   offsets_[static_cast<std::size_t>(i)]);
    }

    std::span<const node_t> neighbors(node_t i) const {
        return {neighbors_.data() + offsets_[static_cast<std::size_t>(i)],
                static_cast<std::size_t>(degree(i))};
    }

    /// Visit each undirected edge once, as (u, v) with u < v, ascending.
    template <typename Fn>
    void for_each_edge(Fn&& fn) const {
        const node_t n = node_count();
        for (node_t u = 0; u < n; ++u)
            for (node_t v : neighbors(u))
                if (u < v) fn(u, v);
    }

    std::vector<node_t> degree_sequence() const {
        const node_t n = node_count();
        std::vector<node_t> d(static_cast<std::size_t>(n));
        for (node_t i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = degree(i);
        return d;
    }

    /// Structural invariants: sorted simple neighbor lists, symmetry, and
    /// edge_count == sum(degree)/2. Returns an explanation on failure.
    std::string validate() const {
        const node_t n = node_count();
        std::int64_t degree_sum = 0;
        for (node_t i = 0; i < n; ++i) {
            auto nb = neighbors(i);
            degree_sum += static_cast<std::int64_t>(nb.size());
            for (std::size_t k = 0; k < nb.size(); ++k) {
                if (nb[k] == i) return "self-loop at node " + std::to_string(i);
                if (nb[k] < 0 || nb[k] >= n) return "neighbor out of range";
                if (k > 0 && nb[k] <= nb[k - 1])
                    return "unsorted or duplicate neighbor at node " + std::to_string(i);
                auto back = neighbors(nb[k]);
                if (!std::binary_search(back.begin(), back.end(), i))
                    return "asymmetric edge " + std::to_string(i) + "-" + std::to_string(nb[k]);
            }
        }
        if (degree_sum != 2 * edge_count_) return "edge count inconsistent with degree sum";
        return {};
    }

    bool operator==(const LayerGraph&) const = default;

    /// Edge-list text form: header "# n=<nodes>", then "i j" per edge,
    /// i < j, ascending. Used for cross-implementation fixtures.
    void write_edge_list(std::ostream& os) const {
        os << "# n=" << node_count() << "\n";
        for_each_edge([&os](node_t u, node_t v) { os << u << " " << v << "\n"; });
    }

    static LayerGraph read_edge_list(std::istream& is) {
        std::string header;
        if (!std::getline(is, header) || header.rfind("# n=", 0) != 0)
            throw std::invalid_argument("edge list: missing '# n=' header");
        node_t n = 0;
        try {
            n = static_cast<node_t>(std::stol(header.substr(4)));
        } catch (const std::exception&) {
            throw std::invalid_argument("edge list: unparsable node count");
        }
        std::vector<std::pair<node_t, node_t>> edges;
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            std::istringstream ls(line);
            long u = 0, v = 0;
            if (!(ls >> u >> v)) throw std::invalid_argument("edge list: bad line '" + line + "'");
            edges.emplace_back(static_cast<node_t>(u), static_cast<node_t>(v));
        }
        return from_edges(n, std::move(edges));
    }

private:
    std::span<node_t> mutable_neighbors(node_t i) {
        return {neighbors_.data() + offsets_[static_cast<std::size_t>(i)],
                static_cast<std::size_t>(degree(i))};
    }

    std::vector<std::int64_t> offsets_ = {0};
    std::vector<node_t> neighbors_;
    std::int64_t edge_count_ = 0;
};

} // namespace cocodiff
