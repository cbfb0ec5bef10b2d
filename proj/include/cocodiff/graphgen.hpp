#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cocodiff/layer_graph.hpp"
#include "cocodiff/rng.hpp"

namespace cocodiff {

enum class GraphKind { lat, rrg, erg, plg, wsg };

inline const char* to_string(GraphKind k) {
    switch (k) {
    case GraphKind::lat: return "LAT";
    case GraphKind::rrg: return "RRG";
    case GraphKind::erg: return "ERG";
    case GraphKind::plg: return "PLG";
    case GraphKind::wsg: return "WSG";
    }
    return "?";
}

inline GraphKind graph_kind_from_string(const std::string& s) {
    if (s == "LAT") return GraphKind::lat;
    if (s == "RRG") return GraphKind::rrg;
    if (s == "ERG") return GraphKind::erg;
    if (s == "PLG") return GraphKind::plg;
    if (s == "WSG") return GraphKind::wsg;
    throw std::invalid_argument("unknown graph kind '" + s + "' (expected LAT|RRG|ERG|PLG|WSG)");
}

/// Parameters for one layer topology. Which fields apply depends on kind:
/// LAT uses n (perfect square, degree fixed at 4); RRG/WSG use n, k;
/// ERG uses n, m_edges; PLG uses n, m_per_node (and optionally triad_prob).
struct GraphSpec {
    GraphKind kind = GraphKind::rrg;
    node_t n = 6400;
    int k = 4;
    std::int64_t m_edges = 12800;
    int m_per_node = 2;
    double beta = 0.001;
    double triad_prob = 0.0; // PLG triad-formation step; 0 = pure preferential attachment
    std::uint64_t seed = 0;
};

namespace detail {

inline bool is_perfect_square(node_t n, node_t& side) {
    if (n < 0) return false;
    side = static_cast<node_t>(std::lround(std::sqrt(static_cast<double>(n))));
    return side * side == n;
}

inline std::uint64_t pair_key(node_t u, node_t v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

} // namespace detail

/// Periodic square lattice, degree 4. n must be a perfect square with side
/// at least 3; a 2x2 torus would collapse wrap-around edges into duplicates.
inline LayerGraph gen_lattice(const GraphSpec& spec) {
    node_t side = 0;
    if (!detail::is_perfect_square(spec.n, side))
        throw std::invalid_argument("LAT: n must be a perfect square, got " +
                                    std::to_string(spec.n));
    if (side < 3)
        throw std::invalid_argument("LAT: minimum size is 3x3 (n >= 9), got n=" +
                                    std::to_string(spec.n));
    std::vector<std::pair<node_t, node_t>> edges;
    edges.reserve(static_cast<std::size_t>(2) * spec.n);
    auto id = [side](node_t r, node_t c) { return r * side + c; };
    for (node_t r = 0; r < side; ++r) {
        for (node_t c = 0; c < side; ++c) {
            edges.emplace_back(id(r, c), id(r, (c + 1) % side));
            edges.emplace_back(id(r, c), id((r + 1) % side, c));
        }
    }
    return LayerGraph::from_edges(spec.n, std::move(edges));
}

/// k-regular random graph via configuration-model stub pairing with full
/// restart whenever the pairing produces a self-loop or multi-edge.
inline LayerGraph gen_rrg(const GraphSpec& spec) {
    const node_t n = spec.n;
    const int k = spec.k;
    if (k <= 0 || n <= 0 || (static_cast<std::int64_t>(n) * k) % 2 != 0)
        throw std::invalid_argument("RRG: n*k must be even and positive");
    if (k >= n) throw std::invalid_argument("RRG: k must be less than n");

    SeededRng rng(spec.seed);
    std::vector<node_t> stubs(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
    for (node_t i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j)
            stubs[static_cast<std::size_t>(i) * k + static_cast<std::size_t>(j)] = i;

    constexpr int kMaxRestarts = 1000;
    for (int attempt = 0; attempt < kMaxRestarts; ++attempt) {
        rng.shuffle(stubs);
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(stubs.size());
        std::vector<std::pair<node_t, node_t>> edges;
        edges.reserve(stubs.size() / 2);
        bool ok = true;
        for (std::size_t s = 0; s < stubs.size(); s += 2) {
            node_t u = stubs[s], v = stubs[s + 1];
            if (u == v || !seen.insert(detail::pair_key(u, v)).second) {
                ok = false;
                break;
            }
            edges.emplace_back(u, v);
        }
        if (ok) return LayerGraph::from_edges(n, std::move(edges));
    }
    throw std::runtime_error("RRG: no simple pairing found within restart cap");
}

/// Erdos-Renyi G(n, m): exactly m distinct edges sampled uniformly without
/// replacement. Rejection sampling; fine while m is far below n(n-1)/2.
inline LayerGraph gen_erg(const GraphSpec& spec) {
    const node_t n = spec.n;
    const std::int64_t m = spec.m_edges;
    const std::int64_t max_edges = static_cast<std::int64_t>(n) * (n - 1) / 2;
    if (m < 0 || m > max_edges)
        throw std::invalid_argument("ERG: m_edges must be in [0, n(n-1)/2], got " +
                                    std::to_string(m));
    SeededRng rng(spec.seed);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(static_cast<std::size_t>(m) * 2);
    std::vector<std::pair<node_t, node_t>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    while (static_cast<std::int64_t>(edges.size()) < m) {
        node_t u = static_cast<node_t>(rng.below(static_cast<std::uint64_t>(n)));
        node_t v = static_cast<node_t>(rng.below(static_cast<std::uint64_t>(n)));
        if (u == v) continue;
        if (seen.insert(detail::pair_key(u, v)).second) edges.emplace_back(u, v);
    }
    return LayerGraph::from_edges(n, std::move(edges));
}

/// Power-law graph grown by preferential attachment: the seed graph is a
/// clique on m_per_node+1 nodes, then each new node attaches m_per_node
/// edges to distinct targets picked proportionally to degree. With
/// triad_prob > 0 an attachment may instead close a triangle on a random
/// neighbor of the previously chosen target.
inline LayerGraph gen_plg(const GraphSpec& spec) {
    const node_t n = spec.n;
    const int m = spec.m_per_node;
    if (m < 1) throw std::invalid_argument("PLG: m_per_node must be >= 1");
    if (n <= m) throw std::invalid_argument("PLG: n must exceed m_per_node");
    if (spec.triad_prob < 0.0 || spec.triad_prob > 1.0)
        throw std::invalid_argument("PLG: triad_prob must lie in [0,1]");

    SeededRng rng(spec.seed);
    std::vector<std::pair<node_t, node_t>> edges;
    std::vector<std::vector<node_t>> adjacency(static_cast<std::size_t>(n));
    // One entry per degree unit; sampling an index uniformly is sampling a
    // node proportionally to its degree.
    std::vector<node_t> degree_urn;
    std::unordered_set<std::uint64_t> seen;
    auto add_edge = [&](node_t a, node_t b) {
        edges.emplace_back(a, b);
        seen.insert(detail::pair_key(a, b));
        adjacency[static_cast<std::size_t>(a)].push_back(b);
        adjacency[static_cast<std::size_t>(b)].push_back(a);
        degree_urn.push_back(a);
        degree_urn.push_back(b);
    };

    const node_t seed_size = static_cast<node_t>(m) + 1;
    for (node_t u = 0; u < seed_size; ++u)
        for (node_t v = u + 1; v < seed_size; ++v)
            add_edge(u, v);

    std::vector<node_t> targets;
    for (node_t u = seed_size; u < n; ++u) {
        targets.clear();
        node_t last_target = -1;
        while (static_cast<int>(targets.size()) < m) {
            node_t candidate = -1;
            if (last_target >= 0 && spec.triad_prob > 0.0 && rng.unit() < spec.triad_prob) {
                // Triad step: a uniformly random neighbor of the previous target.
                const auto& nb = adjacency[static_cast<std::size_t>(last_target)];
                candidate = nb[rng.below(nb.size())];
            }
            if (candidate < 0)
                candidate = degree_urn[rng.below(degree_urn.size())];
            if (candidate == u || seen.count(detail::pair_key(u, candidate))) continue;
            // Reserve the pair now so later draws for this node cannot repeat it;
            // the edge itself is added below so targets do not bias this node's draws.
            seen.insert(detail::pair_key(u, candidate));
            targets.push_back(candidate);
            last_target = candidate;
        }
        for (node_t t : targets) {
            seen.erase(detail::pair_key(u, t));
            add_edge(u, t);
        }
    }
    return LayerGraph::from_edges(n, std::move(edges));
}

/// Watts-Strogatz small world: ring with k/2 neighbors per side, then each
/// ring edge, visited in canonical order (node index, then offset), has its
/// far endpoint rewired with probability beta. A rewire that would create a
/// self-loop or duplicate edge is skipped, so edge count is always n*k/2.
inline LayerGraph gen_wsg(const GraphSpec& spec) {
    const node_t n = spec.n;
    const int k = spec.k;
    if (k <= 0 || k % 2 != 0) throw std::invalid_argument("WSG: k must be positive and even");
    if (k >= n) throw std::invalid_argument("WSG: k must be less than n");
    if (spec.beta < 0.0 || spec.beta > 1.0)
        throw std::invalid_argument("WSG: beta must lie in [0,1]");

    SeededRng rng(spec.seed);
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::pair<node_t, node_t>> edges;
    edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(k) / 2);
    for (node_t i = 0; i < n; ++i) {
        for (int off = 1; off <= k / 2; ++off) {
            node_t j = static_cast<node_t>((i + off) % n);
            edges.emplace_back(i, j);
            seen.insert(detail::pair_key(i, j));
        }
    }
    for (auto& [u, v] : edges) {
        if (spec.beta == 0.0 || rng.unit() >= spec.beta) continue;
        node_t w = static_cast<node_t>(rng.below(static_cast<std::uint64_t>(n)));
        if (w == u || seen.count(detail::pair_key(u, w))) continue; // skip, keep the ring edge
        seen.erase(detail::pair_key(u, v));
        seen.insert(detail::pair_key(u, w));
        v = w;
    }
    return LayerGraph::from_edges(n, std::move(edges));
}

/// Dispatch on spec.kind.
inline LayerGraph generate(const GraphSpec& spec) {
    switch (spec.kind) {
    case GraphKind::lat: return gen_lattice(spec);
    case GraphKind::rrg: return gen_rrg(spec);
    case GraphKind::erg: return gen_erg(spec);
    case GraphKind::plg: return gen_plg(spec);
    case GraphKind::wsg: return gen_wsg(spec);
    }
    throw std::invalid_argument("unknown graph kind");
}

struct MeanPathResult {
    double value = 0.0;     // mean BFS distance source -> reachable node
    bool disconnected = false; // true if any sampled source missed part of the graph
};

/// Mean shortest-path length from sample_size uniformly sampled sources
/// (all nodes when sample_size >= n) to every node they reach. Diagnostic
/// measurement; sampled BFS instead of all-pairs.
inline MeanPathResult mean_shortest_path(const LayerGraph& g, node_t sample_size,
                                         std::uint64_t seed) {
    const node_t n = g.node_count();
    if (n == 0 || sample_size <= 0)
        throw std::invalid_argument("mean_shortest_path: empty graph or sample");

    std::vector<node_t> sources(static_cast<std::size_t>(n));
    for (node_t i = 0; i < n; ++i) sources[static_cast<std::size_t>(i)] = i;
    if (sample_size < n) {
        SeededRng rng(seed);
        rng.shuffle(sources);
        sources.resize(static_cast<std::size_t>(sample_size));
    }

    std::vector<node_t> dist(static_cast<std::size_t>(n));
    std::deque<node_t> queue;
    long double total = 0.0L;
    std::int64_t pairs = 0;
    bool disconnected = false;
    for (node_t src : sources) {
        std::fill(dist.begin(), dist.end(), node_t{-1});
        dist[static_cast<std::size_t>(src)] = 0;
        queue.clear();
        queue.push_back(src);
        node_t reached = 1;
        while (!queue.empty()) {
            node_t u = queue.front();
            queue.pop_front();
            for (node_t v : g.neighbors(u)) {
                if (dist[static_cast<std::size_t>(v)] >= 0) continue;
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                total += dist[static_cast<std::size_t>(v)];
                ++pairs;
                ++reached;
                queue.push_back(v);
            }
        }
        if (reached < n) disconnected = true;
    }
    MeanPathResult r;
    r.value = pairs > 0 ? static_cast<double>(total / pairs) : 0.0;
    r.disconnected = disconnected;
    return r;
}

} // namespace cocodiff
