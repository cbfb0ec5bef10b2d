#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "cocodiff/dynamics.hpp"
#include "cocodiff/graphgen.hpp"

using namespace cocodiff;

namespace {

SimParams params(double alpha, double k, double tau_a = 0.0, double tau_b = 0.0) {
    SimParams p;
    p.alpha = alpha;
    p.k_a = p.k_b = k;
    p.tau_a = tau_a;
    p.tau_b = tau_b;
    return p;
}

/// 4-star in both layers: node 0 adjacent to 1..4, identity pairing.
Multiplex star_multiplex() {
    auto star = LayerGraph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    return Multiplex(star, star, {0, 1, 2, 3, 4});
}

} // namespace

TEST_CASE("local densities count only infected-and-active neighbors") {
    auto m = star_multiplex();
    auto st = SimState::naive(5);

    SECTION("all neighbors naive") {
        auto d = local_densities(m, st, 0);
        REQUIRE(d.dens_a == 0.0);
        REQUIRE(d.dens_b == 0.0);
    }

    SECTION("two active, one dormant, one naive") {
        st.s_a[1] = st.active_a[1] = 1;
        st.s_a[2] = st.active_a[2] = 1;
        st.s_a[3] = 1; // infected but dormant
        auto d = local_densities(m, st, 0);
        REQUIRE(d.dens_a == 0.5);
        REQUIRE(d.dens_b == 0.0);
    }

    SECTION("all four active") {
        for (int i = 1; i <= 4; ++i) st.s_a[i] = st.active_a[i] = 1;
        REQUIRE(local_densities(m, st, 0).dens_a == 1.0);
    }

    SECTION("zero degree means density zero") {
        auto isolated = LayerGraph::from_edges(2, {});
        auto line = LayerGraph::from_edges(2, {{0, 1}});
        Multiplex mx(isolated, line, {0, 1});
        SimState s2 = SimState::naive(2);
        s2.s_a[1] = s2.active_a[1] = 1;
        s2.s_b[1] = s2.active_b[1] = 1;
        auto d = local_densities(mx, s2, 0);
        REQUIRE(d.dens_a == 0.0);
        REQUIRE(d.dens_b == 1.0);
    }
}

TEST_CASE("adoption probability: anchored value") {
    // alpha=1, K=1.34, dens_a=1/4, dens_b=0, naive node.
    // Exact value: (1/4 / 1.34) / (1 + 1/4 / 1.34) = 25 / 159.
    const long double oracle = 25.0L / 159.0L;
    const double p = adoption_prob({0.25, 0.0}, false, false, params(1.0, 1.34));
    REQUIRE(p == Catch::Approx(static_cast<double>(oracle)).epsilon(1e-14));
    REQUIRE(p == Catch::Approx(0.15723270440251572).epsilon(1e-14));
}

TEST_CASE("adoption probability: degenerate and masked cases") {
    auto p = params(2.0, 1.34);
    REQUIRE(adoption_prob({0.0, 0.0}, false, false, p) == 0.0);
    REQUIRE(adoption_prob({0.0, 0.0}, true, false, p) == 0.0);
    // co-infected nodes adopt nothing further
    REQUIRE(adoption_prob({0.9, 0.7}, true, true, p) == 0.0);
}

TEST_CASE("univariate reduction when one contagion is held") {
    for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
        for (double da = 0.0; da <= 1.0; da += 0.25) {
            for (double db = 0.0; db <= 1.0; db += 0.25) {
                auto p = params(alpha, 1.34);
                const double tb = hill_term(db, p.k_b, p.alpha);
                REQUIRE(adoption_prob({da, db}, true, false, p) == tb / (1.0 + tb));
                const double ta = hill_term(da, p.k_a, p.alpha);
                REQUIRE(adoption_prob({da, db}, false, true, p) == ta / (1.0 + ta));
            }
        }
    }
}

TEST_CASE("adoption probability properties on a parameter grid") {
    const std::vector<double> alphas{0.5, 1.0, 2.0, 3.0, 5.0};
    const std::vector<double> ks{0.5, 1.0, 1.34, 2.0};
    const std::vector<double> dens{0.0, 0.1, 0.25, 0.5, 0.75, 1.0};
    for (double alpha : alphas)
        for (double k : ks)
            for (double da : dens)
                for (double db : dens) {
                    auto p = params(alpha, k);
                    const double v = adoption_prob({da, db}, false, false, p);
                    REQUIRE(v >= 0.0);
                    REQUIRE(v < 1.0);
                    // monotone non-decreasing in each density
                    REQUIRE(adoption_prob({da + 0.05, db}, false, false, p) >= v);
                    REQUIRE(adoption_prob({da, db + 0.05}, false, false, p) >= v);
                    // scaling (c*dens, c*K) leaves the value unchanged
                    for (double c : {0.5, 2.0}) {
                        auto scaled = params(alpha, c * k);
                        const double w =
                            adoption_prob({c * da, c * db}, false, false, scaled);
                        if (v == 0.0) REQUIRE(w == 0.0);
                        else REQUIRE(w == Catch::Approx(v).epsilon(1e-12));
                    }
                }
}

TEST_CASE("alpha=1, K=1 is the plain density-sum threshold model") {
    for (double da : {0.0, 0.2, 0.5, 1.0})
        for (double db : {0.0, 0.3, 0.75}) {
            const double x = da + db;
            const double expect = x > 0 ? x / (1.0 + x) : 0.0;
            REQUIRE(adoption_prob({da, db}, false, false, params(1.0, 1.0)) ==
                    Catch::Approx(expect).margin(1e-15));
        }
}

TEST_CASE("choice coin toss") {
    REQUIRE(choice_prob_a({0.3, 0.1}, params(1.0, 1.34)) == Catch::Approx(0.75).epsilon(1e-12));
    REQUIRE(choice_prob_a({0.4, 0.0}, params(2.0, 1.34)) == 1.0);
    for (double alpha : {0.5, 1.0, 2.0, 3.0, 5.0})
        REQUIRE(choice_prob_a({0.6, 0.6}, params(alpha, 1.34)) == 0.5);
    REQUIRE_THROWS_AS(choice_prob_a({0.0, 0.0}, params(1.0, 1.0)), std::logic_error);
}

TEST_CASE("choice probabilities are complementary") {
    for (double alpha : {0.5, 1.0, 3.0})
        for (double da : {0.05, 0.3, 0.9})
            for (double db : {0.0, 0.15, 0.8}) {
                auto p = params(alpha, 1.34);
                const double pa = choice_prob_a({da, db}, p);
                const double pb = choice_prob_a({db, da}, p); // symmetry: B's coin
                REQUIRE(pa + pb == Catch::Approx(1.0).margin(1e-12));
            }
}

TEST_CASE("dormancy draws") {
    SECTION("tau zero leaves the state untouched") {
        auto st = SimState::naive(10);
        for (int i = 0; i < 10; ++i) st.s_a[i] = st.active_a[i] = 1;
        st.recount();
        auto next = dormancy_draws(st, params(1, 1, 0.0, 0.0), TrialRng(1, 0));
        REQUIRE(next == st);
    }

    SECTION("tau one silences everything in one call") {
        auto st = SimState::naive(100);
        for (int i = 0; i < 100; ++i) {
            st.s_a[i] = st.active_a[i] = 1;
            st.s_b[i] = st.active_b[i] = (i % 2 == 0);
        }
        st.recount();
        auto next = dormancy_draws(st, params(1, 1, 1.0, 0.0), TrialRng(1, 0));
        REQUIRE(next.active_count_a == 0);
        // infection flags untouched, B activity untouched
        REQUIRE(next.s_a == st.s_a);
        REQUIRE(next.active_b == st.active_b);
    }

    SECTION("newly dormant counts concentrate at Binomial(n, tau)") {
        const int n = 10000;
        const double tau = 0.14;
        double total = 0;
        for (int rep = 0; rep < 50; ++rep) {
            auto st = SimState::naive(n);
            for (int i = 0; i < n; ++i) st.s_a[i] = st.active_a[i] = 1;
            st.recount();
            auto next = dormancy_draws(st, params(1, 1, tau, 0.0), TrialRng(4242, rep));
            total += n - next.active_count_a;
        }
        const double mean = total / 50.0;
        const double sigma_mean = std::sqrt(n * tau * (1 - tau) / 50.0);
        REQUIRE(std::abs(mean - n * tau) <= 3.0 * sigma_mean);
    }
}

TEST_CASE("sim params validation") {
    REQUIRE_THROWS_AS(params(0.0, 1.0).validate(), std::invalid_argument);
    REQUIRE_THROWS_AS(params(1.0, 0.0).validate(), std::invalid_argument);
    REQUIRE_THROWS_AS(params(1.0, 1.0, 1.5).validate(), std::invalid_argument);
    REQUIRE_NOTHROW(params(1.0, 1.34, 0.2, 1.0).validate());
}
