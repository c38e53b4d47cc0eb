#ifndef MTSAD_RNG_HPP
#define MTSAD_RNG_HPP

#include <cstdint>
#include <random>

namespace mtsad {

/// Deterministic random source. Wraps std::mt19937_64 but derives uniform
/// doubles directly from the raw 64-bit stream, so sequences are identical
/// across standard-library implementations (std::uniform_real_distribution
/// gives no such guarantee).
class rng {
public:
    explicit rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Derives an independent substream seed from (seed, stream). Used to
    /// give PSO particles and pipeline stages their own deterministic
    /// streams regardless of evaluation order.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        // splitmix64 finalizer over the combined state
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace mtsad

#endif
