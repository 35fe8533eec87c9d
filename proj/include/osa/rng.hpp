#pragma once

#include <cstdint>

namespace osa {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Stateless counter-based randomness: every draw is a pure function of the
// key path (root seed -> replication -> episode -> slot -> channel). Channel
// availability therefore forms a common random environment shared by every
// policy variant run under the same seed, replications are independent, and
// reruns are bit-identical.
struct RngKey {
    std::uint64_t bits = 0;

    constexpr RngKey child(std::uint64_t tag) const {
        return RngKey{mix64(bits ^ (0xD1342543DE82EF95ull * (tag + 0x632BE59BD9B4E019ull)))};
    }

    // Uniform double in [0, 1) for a counter under this key.
    constexpr double uniform(std::uint64_t counter) const {
        std::uint64_t h = mix64(bits ^ (0x9E3779B97F4A7C15ull * (counter + 1)));
        return static_cast<double>(h >> 11) * 0x1.0p-53;
    }
};

}  // namespace osa
