#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace cocodiff {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

/// SplitMix64 finalizer. Full-avalanche mix of a 64-bit word.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Chain-hash a sequence of words into one key. Order-sensitive.
inline std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) {
    std::uint64_t h = 0x8E31B462F7C53ED1ull;
    for (std::uint64_t w : words)
        h = mix64(h ^ (w + kGoldenGamma + (h << 6) + (h >> 2)));
    return h;
}

/// Derive an independent sub-seed from a base seed and a tag.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
    return hash_words({base, tag});
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag1, std::uint64_t tag2) {
    return hash_words({base, tag1, tag2});
}

/// Map a 64-bit word to a double in [0, 1) using the top 53 bits.
inline double to_unit_double(std::uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// Map a 64-bit word to an integer in [0, n). Multiply-shift reduction;
/// bias is at most n/2^64 which is immaterial at the sizes used here.
inline std::uint64_t to_bounded(std::uint64_t h, std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(h) * static_cast<unsigned __int128>(n)) >> 64);
}

/// Purpose tags for per-node draws within a simulation step. Keeping the
/// purpose in the hash input gives every (step, node, purpose) triple its
/// own fixed uniform variate, so evaluation order never matters.
enum class Draw : std::uint64_t {
    adoption = 1,
    choice = 2,
    dormant_a = 3,
    dormant_b = 4,
    seed_node = 5,
};

/// Counter-based RNG for one trial. Stateless draws: the variate at
/// (step, node, purpose) is a pure function of the key, so the reference
/// and vectorized steppers (and any parallel schedule) see identical streams.
class TrialRng {
public:
    TrialRng(std::uint64_t master_seed, std::uint64_t trial_index)
        : key_(hash_words({master_seed, 0x7E31A5D1ull, trial_index})) {}

    std::uint64_t raw(std::uint64_t step, std::uint64_t node, Draw purpose) const {
        return hash_words({key_, step, node, static_cast<std::uint64_t>(purpose)});
    }

    double uniform(std::uint64_t step, std::uint64_t node, Draw purpose) const {
        return to_unit_double(raw(step, node, purpose));
    }

    std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
};

/// Sequential RNG for graph construction. mt19937_64 output is pinned by
/// the standard; bounded draws below avoid std::uniform_int_distribution,
/// whose mapping is implementation-defined.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    std::uint64_t below(std::uint64_t n) { return to_bounded(next(), n); }

    double unit() { return to_unit_double(next()); }

    /// Fisher-Yates shuffle, deterministic given the engine state.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 eng_;
};

} // namespace cocodiff
