#pragma once

#include <cmath>
#include <cstdint>

namespace e8flash {

inline uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// SplitMix64; cheap, counter-like, and good enough for Monte-Carlo noise.
struct SplitMix64 {
    uint64_t state = 0;
    uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        return mix64(state);
    }
};

/// Independent substream keyed by (seed, index). Trials seeded this way are
/// reproducible regardless of how they are distributed over workers.
inline SplitMix64 substream(uint64_t seed, uint64_t index) {
    return SplitMix64{mix64(seed ^ 0x5851F42D4C957F2Dull) ^ mix64(index + 0x14057B7EF767814Full)};
}

/// Uniform and Gaussian draws from one substream. Gaussians use the exact
/// Box-Muller transform, generated in pairs.
class RandomStream {
public:
    explicit RandomStream(SplitMix64 rng) : rng_(rng) {}

    uint64_t next_u64() { return rng_.next(); }

    /// Uniform over [0, 2^bits) for 0 < bits <= 64.
    uint64_t next_bits(int bits) { return rng_.next() >> (64 - bits); }

    /// Uniform double in [0, 1).
    double next_unit() { return static_cast<double>(rng_.next() >> 11) * 0x1.0p-53; }

    /// Standard normal.
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] keeps the log finite.
        double u1 = (static_cast<double>(rng_.next() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = static_cast<double>(rng_.next() >> 11) * 0x1.0p-53;
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    SplitMix64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace e8flash
