#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cocodiff/multiplex.hpp"
#include "cocodiff/rng.hpp"

namespace cocodiff {

/// Model parameters for one trial. alpha is the synergy exponent of the
/// multivariate Hill adoption function (alpha < 1 synergistic, > 1
/// antagonistic); k_a/k_b the attractiveness half-saturation constants;
/// tau_a/tau_b the per-step dormancy probabilities.
struct SimParams {
    double alpha = 1.0;
    double k_a = 1.34;
    double k_b = 1.34;
    double tau_a = 0.0;
    double tau_b = 0.0;
    int max_steps = 1000;
    std::uint64_t master_seed = 0;
    // When true, nodes that adopted during the current step are exempt from
    // that step's dormancy draw. Default false: the draw covers the whole
    // infected population.
    bool dormancy_spares_new_adopters = false;

    void validate() const {
        if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
        if (!(k_a > 0.0) || !(k_b > 0.0)) throw std::invalid_argument("k_a, k_b must be > 0");
        if (tau_a < 0.0 || tau_a > 1.0) throw std::invalid_argument("tau_a must lie in [0,1]");
        if (tau_b < 0.0 || tau_b > 1.0) throw std::invalid_argument("tau_b must lie in [0,1]");
        if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
    }
};

/// Local active-neighbor densities of one node, per layer.
struct Densities {
    double dens_a = 0.0;
    double dens_b = 0.0;
};

/// Per-node infection and activity flags. s_* record whether a node has
/// ever adopted a contagion (monotone); active_* whether it still spreads
/// it. Activity is tracked per contagion: dormancy in one contagion does
/// not silence the other. Aggregate counts are maintained by the steppers
/// so stop checks stay O(1).
struct SimState {
    std::vector<std::uint8_t> s_a, s_b, active_a, active_b;
    int step = 0;
    node_t count_a = 0, count_b = 0, count_ab = 0;
    node_t active_count_a = 0, active_count_b = 0;

    static SimState naive(node_t n) {
        SimState st;
        st.s_a.assign(static_cast<std::size_t>(n), 0);
        st.s_b.assign(static_cast<std::size_t>(n), 0);
        st.active_a.assign(static_cast<std::size_t>(n), 0);
        st.active_b.assign(static_cast<std::size_t>(n), 0);
        return st;
    }

    node_t node_count() const { return static_cast<node_t>(s_a.size()); }

    void recount() {
        count_a = count_b = count_ab = active_count_a = active_count_b = 0;
        for (std::size_t i = 0; i < s_a.size(); ++i) {
            count_a += s_a[i];
            count_b += s_b[i];
            count_ab += static_cast<node_t>(s_a[i] & s_b[i]);
            active_count_a += active_a[i];
            active_count_b += active_b[i];
        }
    }

    bool operator==(const SimState&) const = default;
};

/// One Hill term (d/K)^alpha. pow(0, alpha) is 0 for alpha > 0, which is
/// exactly the convention the adoption function needs.
inline double hill_term(double density, double k, double alpha) {
    return std::pow(density / k, alpha);
}

/// Fraction of a node's layer neighbors that are infected AND still active
/// for that layer's contagion. Zero-degree nodes get density 0.
inline Densities local_densities(const Multiplex& m, const SimState& st, node_t i) {
    Densities d;
    auto nb_a = m.layer_a().neighbors(i);
    if (!nb_a.empty()) {
        int active = 0;
        for (node_t j : nb_a)
            active += st.s_a[static_cast<std::size_t>(j)] & st.active_a[static_cast<std::size_t>(j)];
        d.dens_a = static_cast<double>(active) / static_cast<double>(nb_a.size());
    }
    auto nb_b = m.layer_b_canonical().neighbors(i);
    if (!nb_b.empty()) {
        int active = 0;
        for (node_t j : nb_b)
            active += st.s_b[static_cast<std::size_t>(j)] & st.active_b[static_cast<std::size_t>(j)];
        d.dens_b = static_cast<double>(active) / static_cast<double>(nb_b.size());
    }
    return d;
}

/// Composition of already-masked Hill terms into the adoption probability.
/// Factored out so every stepper performs bit-identical arithmetic.
inline double adoption_prob_from_terms(double xa, double xb) {
    const double x = xa + xb;
    return x > 0.0 ? x / (1.0 + x) : 0.0;
}

inline double choice_prob_from_terms(double ta, double tb) {
    if (!(ta > 0.0 || tb > 0.0))
        throw std::logic_error("choice probability: both densities zero (unreachable by contract)");
    return ta / (ta + tb);
}

/// Probability that a node adopts anything this step:
/// x / (1 + x) with x = (1-s_a)(dens_a/K_A)^alpha + (1-s_b)(dens_b/K_B)^alpha.
/// A co-infected node has x = 0 and adopts nothing further.
inline double adoption_prob(const Densities& d, bool has_a, bool has_b, const SimParams& p) {
    const double xa = has_a ? 0.0 : hill_term(d.dens_a, p.k_a, p.alpha);
    const double xb = has_b ? 0.0 : hill_term(d.dens_b, p.k_b, p.alpha);
    return adoption_prob_from_terms(xa, xb);
}

/// Given that a naive node adopts, the probability the adoption is A:
/// a density-weighted coin toss. Only defined when some density is positive.
inline double choice_prob_a(const Densities& d, const SimParams& p) {
    const double ta = hill_term(d.dens_a, p.k_a, p.alpha);
    const double tb = hill_term(d.dens_b, p.k_b, p.alpha);
    return choice_prob_from_terms(ta, tb);
}

/// Independent per-node dormancy draws: every active node stops spreading
/// contagion X with probability tau_X. Irreversible; infection flags are
/// untouched, so dormant nodes remain susceptible to the other contagion.
/// Draws are indexed by (st.step, node, purpose).
inline SimState dormancy_draws(const SimState& st, const SimParams& p, const TrialRng& rng) {
    SimState next = st;
    const std::uint64_t step = static_cast<std::uint64_t>(st.step);
    const node_t n = st.node_count();
    if (p.tau_a > 0.0) {
        for (node_t i = 0; i < n; ++i) {
            if (!next.active_a[static_cast<std::size_t>(i)]) continue;
            if (rng.uniform(step, static_cast<std::uint64_t>(i), Draw::dormant_a) < p.tau_a) {
                next.active_a[static_cast<std::size_t>(i)] = 0;
                --next.active_count_a;
            }
        }
    }
    if (p.tau_b > 0.0) {
        for (node_t i = 0; i < n; ++i) {
            if (!next.active_b[static_cast<std::size_t>(i)]) continue;
            if (rng.uniform(step, static_cast<std::uint64_t>(i), Draw::dormant_b) < p.tau_b) {
                next.active_b[static_cast<std::size_t>(i)] = 0;
                --next.active_count_b;
            }
        }
    }
    return next;
}

} // namespace cocodiff
