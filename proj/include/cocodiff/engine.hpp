#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cocodiff/dynamics.hpp"
#include "cocodiff/multiplex.hpp"
#include "cocodiff/rng.hpp"

namespace cocodiff {

enum class StopReason { extinct, saturated, horizon };

inline const char* to_string(StopReason r) {
    switch (r) {
    case StopReason::extinct: return "extinct";
    case StopReason::saturated: return "saturated";
    case StopReason::horizon: return "horizon";
    }
    return "?";
}

/// Cumulative adoption counts per step for one trial. series_*[t] is the
/// number of nodes that had adopted by the end of step t (entry 0 is the
/// seeded state).
struct TrialResult {
    std::vector<node_t> series_a, series_b;
    node_t final_a = 0, final_b = 0;
    int steps_run = 0;
    StopReason stop_reason = StopReason::horizon;

    void write_csv(std::ostream& os) const {
        os << "step,count_a,count_b\n";
        for (std::size_t t = 0; t < series_a.size(); ++t)
            os << t << "," << series_a[t] << "," << series_b[t] << "\n";
    }
};

/// Seed one uniformly chosen node with both contagions, active for both.
inline SimState seed_initial(const Multiplex& m, const TrialRng& rng) {
    const node_t n = m.node_count();
    if (n < 1) throw std::invalid_argument("seed_initial: empty multiplex");
    SimState st = SimState::naive(n);
    const node_t seed =
        static_cast<node_t>(to_bounded(rng.raw(0, 0, Draw::seed_node), static_cast<std::uint64_t>(n)));
    st.s_a[static_cast<std::size_t>(seed)] = 1;
    st.s_b[static_cast<std::size_t>(seed)] = 1;
    st.active_a[static_cast<std::size_t>(seed)] = 1;
    st.active_b[static_cast<std::size_t>(seed)] = 1;
    st.count_a = st.count_b = st.count_ab = 1;
    st.active_count_a = st.active_count_b = 1;
    return st;
}

namespace detail {

inline void adopt_a(SimState& st, node_t i) {
    st.s_a[static_cast<std::size_t>(i)] = 1;
    st.active_a[static_cast<std::size_t>(i)] = 1;
    ++st.count_a;
    ++st.active_count_a;
    if (st.s_b[static_cast<std::size_t>(i)]) ++st.count_ab;
}

inline void adopt_b(SimState& st, node_t i) {
    st.s_b[static_cast<std::size_t>(i)] = 1;
    st.active_b[static_cast<std::size_t>(i)] = 1;
    ++st.count_b;
    ++st.active_count_b;
    if (st.s_a[static_cast<std::size_t>(i)]) ++st.count_ab;
}

} // namespace detail

/// Straightforward per-node step: the executable reading of the model and
/// the oracle the vectorized path is tested against. Phase 1 evaluates
/// every node's adoption against densities of the pre-step state
/// (synchronous update); phase 2 applies dormancy to the whole infected
/// population, newly adopted nodes included unless the params say otherwise.
inline void step_reference(const Multiplex& m, const SimState& prev, SimState& next,
                           const SimParams& p, const TrialRng& rng) {
    next = prev;
    next.step = prev.step + 1;
    const std::uint64_t s = static_cast<std::uint64_t>(next.step);
    const node_t n = prev.node_count();

    for (node_t i = 0; i < n; ++i) {
        const bool has_a = prev.s_a[static_cast<std::size_t>(i)] != 0;
        const bool has_b = prev.s_b[static_cast<std::size_t>(i)] != 0;
        if (has_a && has_b) continue;
        const Densities d = local_densities(m, prev, i);
        const double prob = adoption_prob(d, has_a, has_b, p);
        if (!(prob > 0.0)) continue;
        if (rng.uniform(s, static_cast<std::uint64_t>(i), Draw::adoption) >= prob) continue;
        bool take_a;
        if (!has_a && !has_b)
            take_a = rng.uniform(s, static_cast<std::uint64_t>(i), Draw::choice) <
                     choice_prob_a(d, p);
        else
            take_a = has_b; // the only contagion left to adopt
        if (take_a) detail::adopt_a(next, i);
        else detail::adopt_b(next, i);
    }

    if (p.tau_a > 0.0) {
        for (node_t i = 0; i < n; ++i) {
            if (!next.active_a[static_cast<std::size_t>(i)]) continue;
            if (p.dormancy_spares_new_adopters && !prev.s_a[static_cast<std::size_t>(i)]) continue;
            if (rng.uniform(s, static_cast<std::uint64_t>(i), Draw::dormant_a) < p.tau_a) {
                next.active_a[static_cast<std::size_t>(i)] = 0;
                --next.active_count_a;
            }
        }
    }
    if (p.tau_b > 0.0) {
        for (node_t i = 0; i < n; ++i) {
            if (!next.active_b[static_cast<std::size_t>(i)]) continue;
            if (p.dormancy_spares_new_adopters && !prev.s_b[static_cast<std::size_t>(i)]) continue;
            if (rng.uniform(s, static_cast<std::uint64_t>(i), Draw::dormant_b) < p.tau_b) {
                next.active_b[static_cast<std::size_t>(i)] = 0;
                --next.active_count_b;
            }
        }
    }
}

/// Production step kernel. Same distribution and, under the shared
/// node-indexed draw streams, bit-identical output to step_reference.
/// Keeps per-node active-infected neighbor counts incrementally (only
/// state transitions are scattered to neighbors) and caches Hill terms per
/// (layer, degree, count), so a quiescent step costs O(n) instead of
/// O(sum of degrees).
class VectorizedStepper {
public:
    VectorizedStepper(const Multiplex& m, const SimParams& p) : m_(&m), p_(p) {
        p_.validate();
        const node_t n = m.node_count();
        deg_a_.resize(static_cast<std::size_t>(n));
        deg_b_.resize(static_cast<std::size_t>(n));
        for (node_t i = 0; i < n; ++i) {
            deg_a_[static_cast<std::size_t>(i)] = m.layer_a().degree(i);
            deg_b_[static_cast<std::size_t>(i)] = m.layer_b_canonical().degree(i);
        }
        build_hill_tables(deg_a_, p_.k_a, p_.alpha, hill_a_);
        build_hill_tables(deg_b_, p_.k_b, p_.alpha, hill_b_);
        cnt_a_.assign(static_cast<std::size_t>(n), 0);
        cnt_b_.assign(static_cast<std::size_t>(n), 0);
    }

    /// Rebuild the neighbor counts for an arbitrary state. Must be called
    /// once before stepping; afterwards step() keeps the counts in sync.
    void sync(const SimState& st) {
        std::fill(cnt_a_.begin(), cnt_a_.end(), 0);
        std::fill(cnt_b_.begin(), cnt_b_.end(), 0);
        const node_t n = st.node_count();
        for (node_t j = 0; j < n; ++j) {
            if (st.s_a[static_cast<std::size_t>(j)] & st.active_a[static_cast<std::size_t>(j)])
                for (node_t v : m_->layer_a().neighbors(j)) ++cnt_a_[static_cast<std::size_t>(v)];
            if (st.s_b[static_cast<std::size_t>(j)] & st.active_b[static_cast<std::size_t>(j)])
                for (node_t v : m_->layer_b_canonical().neighbors(j))
                    ++cnt_b_[static_cast<std::size_t>(v)];
        }
    }

    /// Advance one step. prev must be the state sync()/step() last left the
    /// counts aligned with.
    void step(const SimState& prev, SimState& next, const TrialRng& rng) {
        next = prev;
        next.step = prev.step + 1;
        const std::uint64_t s = static_cast<std::uint64_t>(next.step);
        const node_t n = prev.node_count();

        adopters_a_.clear();
        adopters_b_.clear();
        for (node_t i = 0; i < n; ++i) {
            const std::uint8_t ha = prev.s_a[static_cast<std::size_t>(i)];
            const std::uint8_t hb = prev.s_b[static_cast<std::size_t>(i)];
            if (ha & hb) continue;
            const std::int32_t ca = cnt_a_[static_cast<std::size_t>(i)];
            const std::int32_t cb = cnt_b_[static_cast<std::size_t>(i)];
            if (ca == 0 && cb == 0) continue;
            const double ta =
                ca == 0 ? 0.0
                        : hill_a_[static_cast<std::size_t>(deg_a_[static_cast<std::size_t>(i)])]
                                 [static_cast<std::size_t>(ca)];
            const double tb =
                cb == 0 ? 0.0
                        : hill_b_[static_cast<std::size_t>(deg_b_[static_cast<std::size_t>(i)])]
                                 [static_cast<std::size_t>(cb)];
            const double xa = ha ? 0.0 : ta;
            const double xb = hb ? 0.0 : tb;
            const double prob = adoption_prob_from_terms(xa, xb);
            if (!(prob > 0.0)) continue;
            if (rng.uniform(s, static_cast<std::uint64_t>(i), Draw::adoption) >= prob) continue;
            bool take_a;
            if (!ha && !hb)
                take_a = rng.uniform(s, static_cast<std::uint64_t>(i), Draw::choice) <
                         choice_prob_from_terms(ta, tb);
            else
                take_a = hb != 0;
            if (take_a) {
                detail::adopt_a(next, i);
                adopters_a_.push_back(i);
            } else {
                detail::adopt_b(next, i);
                adopters_b_.push_back(i);
            }
        }

        dormant_a_.clear();
        dormant_b_.clear();
        if (p_.tau_a > 0.0) {
            for (node_t i = 0; i < n; ++i) {
                if (!next.active_a[static_cast<std::size_t>(i)]) continue;
                if (p_.dormancy_spares_new_adopters && !prev.s_a[static_cast<std::size_t>(i)])
                    continue;
                if (rng.uniform(s, static_cast<std::uint64_t>(i), Draw::dormant_a) < p_.tau_a) {
                    next.active_a[static_cast<std::size_t>(i)] = 0;
                    --next.active_count_a;
                    dormant_a_.push_back(i);
                }
            }
        }
        if (p_.tau_b > 0.0) {
            for (node_t i = 0; i < n; ++i) {
                if (!next.active_b[static_cast<std::size_t>(i)]) continue;
                if (p_.dormancy_spares_new_adopters && !prev.s_b[static_cast<std::size_t>(i)])
                    continue;
                if (rng.uniform(s, static_cast<std::uint64_t>(i), Draw::dormant_b) < p_.tau_b) {
                    next.active_b[static_cast<std::size_t>(i)] = 0;
                    --next.active_count_b;
                    dormant_b_.push_back(i);
                }
            }
        }

        // Mirror the phase order in the counts: adopters raised their
        // neighbors' counts, then dormancy lowered them again. A node that
        // adopted and went dormant in the same step contributes +1 then -1.
        for (node_t i : adopters_a_)
            for (node_t v : m_->layer_a().neighbors(i)) ++cnt_a_[static_cast<std::size_t>(v)];
        for (node_t i : adopters_b_)
            for (node_t v : m_->layer_b_canonical().neighbors(i))
                ++cnt_b_[static_cast<std::size_t>(v)];
        for (node_t i : dormant_a_)
            for (node_t v : m_->layer_a().neighbors(i)) --cnt_a_[static_cast<std::size_t>(v)];
        for (node_t i : dormant_b_)
            for (node_t v : m_->layer_b_canonical().neighbors(i))
                --cnt_b_[static_cast<std::size_t>(v)];
    }

private:
    static void build_hill_tables(const std::vector<node_t>& degrees, double k, double alpha,
                                  std::vector<std::vector<double>>& tables) {
        node_t max_deg = 0;
        for (node_t d : degrees) max_deg = std::max(max_deg, d);
        tables.assign(static_cast<std::size_t>(max_deg) + 1, {});
        for (node_t d : degrees) {
            auto& row = tables[static_cast<std::size_t>(d)];
            if (d == 0 || !row.empty()) continue;
            row.resize(static_cast<std::size_t>(d) + 1);
            for (node_t c = 0; c <= d; ++c)
                row[static_cast<std::size_t>(c)] =
                    hill_term(static_cast<double>(c) / static_cast<double>(d), k, alpha);
        }
    }

    const Multiplex* m_;
    SimParams p_;
    std::vector<node_t> deg_a_, deg_b_;
    std::vector<std::vector<double>> hill_a_, hill_b_;
    std::vector<std::int32_t> cnt_a_, cnt_b_;
    std::vector<node_t> adopters_a_, adopters_b_, dormant_a_, dormant_b_;
};

/// One-shot functional forms of the two steppers.
inline SimState step_reference(const Multiplex& m, const SimState& st, const SimParams& p,
                               const TrialRng& rng) {
    SimState next;
    step_reference(m, st, next, p, rng);
    return next;
}

inline SimState step_vectorized(const Multiplex& m, const SimState& st, const SimParams& p,
                                const TrialRng& rng) {
    VectorizedStepper stepper(m, p);
    stepper.sync(st);
    SimState next;
    stepper.step(st, next, rng);
    return next;
}

enum class StepMethod { reference, vectorized };

/// Run one trial to a stop condition: extinct (no active node for either
/// contagion), saturated (every node co-infected), or the step horizon.
/// The draw stream is a pure function of (params.master_seed, trial_index).
inline TrialResult run_trial(const Multiplex& m, const SimParams& p, std::uint64_t trial_index,
                             StepMethod method = StepMethod::vectorized) {
    p.validate();
    const TrialRng rng(p.master_seed, trial_index);
    SimState cur = seed_initial(m, rng);
    SimState next;
    const node_t n = m.node_count();

    TrialResult tr;
    tr.series_a.push_back(cur.count_a);
    tr.series_b.push_back(cur.count_b);

    VectorizedStepper stepper(m, p);
    if (method == StepMethod::vectorized) stepper.sync(cur);

    while (true) {
        if (cur.active_count_a == 0 && cur.active_count_b == 0) {
            tr.stop_reason = StopReason::extinct;
            break;
        }
        if (cur.count_ab == n) {
            tr.stop_reason = StopReason::saturated;
            break;
        }
        if (cur.step >= p.max_steps) {
            tr.stop_reason = StopReason::horizon;
            break;
        }
        if (method == StepMethod::vectorized) stepper.step(cur, next, rng);
        else step_reference(m, cur, next, p, rng);
        std::swap(cur, next);
        tr.series_a.push_back(cur.count_a);
        tr.series_b.push_back(cur.count_b);
    }
    tr.steps_run = cur.step;
    tr.final_a = cur.count_a;
    tr.final_b = cur.count_b;
    return tr;
}

} // namespace cocodiff
