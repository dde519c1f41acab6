#pragma once

#include <cstdint>

namespace lmeasure {

/// Counter-based generator: the value at (seed, index) is a pure function of
/// both, so draws can be partitioned across threads without changing the
/// stream. splitmix64 finalizer over a Weyl sequence.
struct CounterRng {
    std::uint64_t seed = 0;

    std::uint64_t at(std::uint64_t index) const {
        std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform(std::uint64_t index) const {
        return static_cast<double>(at(index) >> 11) * 0x1.0p-53;
    }
};

}  // namespace lmeasure
