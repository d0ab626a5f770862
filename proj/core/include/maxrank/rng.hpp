#pragma once

#include <cstdint>
#include <random>

namespace maxrank {

// Deterministic PRNG used by all randomized machinery. The bounded draw is
// implemented with plain rejection sampling instead of
// std::uniform_int_distribution, whose output is not pinned by the standard;
// identical seeds must give identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform value in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = engine_();
        while (v >= limit) v = engine_();
        return v % n;
    }

    // Uniform value in [lo, hi] inclusive.
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
        return lo + below(hi - lo + 1);
    }

    bool chance(double p) {
        return static_cast<double>(below(1u << 24)) < p * static_cast<double>(1u << 24);
    }

private:
    std::mt19937_64 engine_;
};

// splitmix64 finalizer; used to derive independent sub-seeds from a master
// seed so that trial i is reproducible regardless of scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace maxrank
