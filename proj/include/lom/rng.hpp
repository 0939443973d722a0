#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

namespace lom {

// Counter-friendly splitmix64 stream. Streams are cheap to construct from a
// hashed key, so independent consumers (particle m at iteration t) draw from
// disjoint, schedule-independent sequences.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (no spare caching, fully deterministic).
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    Eigen::Vector3d normal3(double std_dev) {
        return {std_dev * normal(), std_dev * normal(), std_dev * normal()};
    }

    /// Uniform rotation (Shoemake's subgroup algorithm).
    Eigen::Quaterniond uniform_quaternion() {
        double u1 = uniform(), u2 = uniform(), u3 = uniform();
        double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
        return {b * std::cos(2.0 * M_PI * u3), a * std::sin(2.0 * M_PI * u2),
                a * std::cos(2.0 * M_PI * u2), b * std::sin(2.0 * M_PI * u3)};
    }

private:
    uint64_t state_;
};

/// Mixes stream identifiers into a seed so (seed, iteration, index) keyed
/// streams never collide in practice.
inline uint64_t mix_key(uint64_t a, uint64_t b = 0, uint64_t c = 0) {
    auto mix = [](uint64_t h, uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdull;
        return h ^ (h >> 33);
    };
    return mix(mix(mix(0x8a5cd789635d2dffull, a), b), c);
}

}  // namespace lom
