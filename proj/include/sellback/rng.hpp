// Deterministic, platform-independent random streams.
//
// Every market entity owns its own SplitMix64 stream, keyed by the master
// seed, a role tag and the entity index. Results are therefore bit-identical
// across platforms, across sequential/parallel execution, and across sweeps
// that change the population size (prosumer j draws the same numbers whether
// the run has 1000 or 4000 prosumers).
#pragma once

#include <cstdint>

namespace sellback::rng {

inline constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1) with 53 bits of precision.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

  private:
    std::uint64_t state_;
};

enum class StreamTag : std::uint64_t {
    Consumer = 0x636f6e73756d6572ULL,
    Prosumer = 0x70726f73756d6572ULL,
};

// Stream for entity `index` under role `tag`, derived from the master seed.
inline SplitMix64 stream(std::uint64_t master_seed, StreamTag tag,
                         std::uint64_t index) {
    const std::uint64_t k = mix64(master_seed ^ static_cast<std::uint64_t>(tag));
    return SplitMix64(mix64(k + index));
}

}  // namespace sellback::rng
