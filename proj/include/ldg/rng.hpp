#pragma once

#include <cstdint>
#include <random>

namespace ldg {

// All randomized code uses mt19937_64 seeded through mix_seed so that
// every stochastic result is reproducible from a recorded 64-bit seed.
using Rng = std::mt19937_64;

inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    // splitmix64 step; decorrelates (seed, stream) pairs.
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline Rng make_rng(uint64_t seed, uint64_t stream = 0) {
    return Rng(mix_seed(seed, stream));
}

inline double uniform01(Rng& rng) {
    // 53-bit mantissa draw in [0,1).
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline int uniform_int(Rng& rng, int lo, int hi) {  // inclusive range
    return static_cast<int>(lo + rng() % static_cast<uint64_t>(hi - lo + 1));
}

}  // namespace ldg
