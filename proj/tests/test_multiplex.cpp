#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <vector>

#include "cocodiff/graphgen.hpp"
#include "cocodiff/multiplex.hpp"

using namespace cocodiff;

namespace {

LayerGraph triangle() { return LayerGraph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}); }
LayerGraph path3() { return LayerGraph::from_edges(3, {{0, 1}, {1, 2}}); }

} // namespace

TEST_CASE("pair_layers produces a seeded uniform permutation") {
    GraphSpec s;
    s.kind = GraphKind::rrg;
    s.n = 6400;
    s.k = 4;
    s.seed = 1;
    auto a = gen_rrg(s);
    s.seed = 2;
    auto b = gen_rrg(s);

    auto m1 = pair_layers(a, b, 77);
    auto m2 = pair_layers(a, b, 77);
    REQUIRE(m1.map_ab() == m2.map_ab());

    auto sorted = m1.map_ab();
    std::sort(sorted.begin(), sorted.end());
    std::vector<node_t> expect(6400);
    std::iota(expect.begin(), expect.end(), 0);
    REQUIRE(sorted == expect);

    auto m3 = pair_layers(a, b, 78);
    REQUIRE(m1.map_ab() != m3.map_ab());
}

TEST_CASE("single node pairing is the identity") {
    auto g = LayerGraph::from_edges(1, {});
    auto m = pair_layers(g, g, 123);
    REQUIRE(m.map_ab() == std::vector<node_t>{0});
}

TEST_CASE("unequal node counts are rejected") {
    auto a = triangle();
    auto b = LayerGraph::from_edges(4, {{0, 1}});
    REQUIRE_THROWS_AS(pair_layers(a, b, 0), std::invalid_argument);
}

TEST_CASE("neighbors_of translates layer B through the pairing") {
    // canonical i <-> b-node map[i]; map = [2, 0, 1]
    Multiplex m(triangle(), path3(), {2, 0, 1});

    REQUIRE(neighbors_of(m, 0, Layer::a).size() == 2);

    // b-node 2 has b-neighbor {1}; canonical index of b-node 1 is 2
    std::vector<node_t> nb0(neighbors_of(m, 0, Layer::b).begin(),
                            neighbors_of(m, 0, Layer::b).end());
    REQUIRE(nb0 == std::vector<node_t>{2});
    // b-node 0 has b-neighbor {1} -> canonical {2}
    std::vector<node_t> nb1(neighbors_of(m, 1, Layer::b).begin(),
                            neighbors_of(m, 1, Layer::b).end());
    REQUIRE(nb1 == std::vector<node_t>{2});
    // b-node 1 has b-neighbors {0, 2} -> canonical {1, 0} -> sorted {0, 1}
    std::vector<node_t> nb2(neighbors_of(m, 2, Layer::b).begin(),
                            neighbors_of(m, 2, Layer::b).end());
    REQUIRE(nb2 == std::vector<node_t>{0, 1});

    REQUIRE_THROWS_AS(neighbors_of(m, 3, Layer::a), std::out_of_range);
}

TEST_CASE("identity map leaves layer B adjacency unchanged") {
    auto g = path3();
    Multiplex m(triangle(), g, {0, 1, 2});
    for (node_t i = 0; i < 3; ++i) {
        auto direct = g.neighbors(i);
        auto via = neighbors_of(m, i, Layer::b);
        REQUIRE(std::vector<node_t>(direct.begin(), direct.end()) ==
                std::vector<node_t>(via.begin(), via.end()));
    }
}

TEST_CASE("pairing preserves the layer B degree multiset") {
    GraphSpec s;
    s.kind = GraphKind::erg;
    s.n = 300;
    s.m_edges = 600;
    s.seed = 9;
    auto a = gen_erg(s);
    s.seed = 10;
    auto b = gen_erg(s);
    auto m = pair_layers(a, b, 4);

    for (node_t i = 0; i < m.node_count(); ++i)
        REQUIRE(static_cast<node_t>(neighbors_of(m, i, Layer::b).size()) ==
                b.degree(m.map_ab()[static_cast<std::size_t>(i)]));

    auto raw = b.degree_sequence();
    auto seen = m.layer_b_canonical().degree_sequence();
    std::sort(raw.begin(), raw.end());
    std::sort(seen.begin(), seen.end());
    REQUIRE(raw == seen);
}
