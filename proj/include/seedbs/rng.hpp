#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "seedbs/types.hpp"

namespace seedbs {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic per-task seed: replications (and independent sub-streams such
// as interval randomness) get their own seed so parallel and serial runs draw
// identical numbers.
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t replication,
                                 std::uint64_t stream = 0) {
    std::uint64_t h = splitmix64(base_seed);
    h = splitmix64(h ^ replication);
    h = splitmix64(h ^ stream);
    return h;
}

// Seeded generator with a fixed, documented normal transform.
//
// Engine: std::mt19937_64 (bit-exact per the standard). Uniforms take the top
// 53 bits of one draw. Normals use the Box-Muller transform on (0,1] x [0,1)
// pairs, caching the second variate of each pair. Streams are reproducible
// for a fixed seed and build; bit-equality across standard library / libm
// implementations is not promised.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n), n > 0. Rejection sampling, no modulo bias.
    index_t uniform_below(index_t n) {
        const auto bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return static_cast<index_t>(v % bound);
    }

    // Standard normal draw.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0,1] keeps the log finite.
        const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace seedbs
