#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cocodiff/layer_graph.hpp"
#include "cocodiff/rng.hpp"

namespace cocodiff {

enum class Layer { a, b };

/// Two layers over one node set, joined by a uniformly random one-to-one
/// node correspondence. All dynamics use canonical (layer-A) indexing;
/// layer B's adjacency is relabeled into canonical indices once here so
/// the stepping loops never translate per access.
class Multiplex {
public:
    Multiplex(LayerGraph layer_a, LayerGraph layer_b, std::vector<node_t> map_ab)
        : layer_a_(std::move(layer_a)), layer_b_(std::move(layer_b)), map_ab_(std::move(map_ab)) {
        const node_t n = layer_a_.node_count();
        if (layer_b_.node_count() != n)
            throw std::invalid_argument("multiplex: layers must have equal node counts");
        if (static_cast<node_t>(map_ab_.size()) != n)
            throw std::invalid_argument("multiplex: map size must equal node count");
        inverse_map_.assign(static_cast<std::size_t>(n), -1);
        for (node_t i = 0; i < n; ++i) {
            node_t j = map_ab_[static_cast<std::size_t>(i)];
            if (j < 0 || j >= n || inverse_map_[static_cast<std::size_t>(j)] != -1)
                throw std::invalid_argument("multiplex: map_ab is not a bijection");
            inverse_map_[static_cast<std::size_t>(j)] = i;
        }
        std::vector<std::pair<node_t, node_t>> relabeled;
        relabeled.reserve(static_cast<std::size_t>(layer_b_.edge_count()));
        layer_b_.for_each_edge([&](node_t u, node_t v) {
            relabeled.emplace_back(inverse_map_[static_cast<std::size_t>(u)],
                                   inverse_map_[static_cast<std::size_t>(v)]);
        });
        layer_b_canonical_ = LayerGraph::from_edges(n, std::move(relabeled));
    }

    node_t node_count() const { return layer_a_.node_count(); }

    const LayerGraph& layer_a() const { return layer_a_; }
    const LayerGraph& layer_b() const { return layer_b_; }

    /// Layer B's adjacency expressed in canonical node indices.
    const LayerGraph& layer_b_canonical() const { return layer_b_canonical_; }

    const LayerGraph& layer(Layer which) const {
        return which == Layer::a ? layer_a_ : layer_b_canonical_;
    }

    const std::vector<node_t>& map_ab() const { return map_ab_; }
    const std::vector<node_t>& inverse_map() const { return inverse_map_; }

private:
    LayerGraph layer_a_;
    LayerGraph layer_b_;
    LayerGraph layer_b_canonical_;
    std::vector<node_t> map_ab_;
    std::vector<node_t> inverse_map_;
};

/// Assemble a multiplex with a uniformly random node pairing,
/// deterministic given the seed.
inline Multiplex pair_layers(LayerGraph a, LayerGraph b, std::uint64_t seed) {
    if (a.node_count() != b.node_count())
        throw std::invalid_argument("pair_layers: layers must have equal node counts");
    std::vector<node_t> map(static_cast<std::size_t>(a.node_count()));
    std::iota(map.begin(), map.end(), node_t{0});
    SeededRng rng(seed);
    rng.shuffle(map);
    return Multiplex(std::move(a), std::move(b), std::move(map));
}

/// A node's neighborhood in the requested layer, in canonical indices.
inline std::span<const node_t> neighbors_of(const Multiplex& m, node_t node, Layer which) {
    if (node < 0 || node >= m.node_count())
        throw std::out_of_range("neighbors_of: node index out of range");
    return m.layer(which).neighbors(node);
}

} // namespace cocodiff
