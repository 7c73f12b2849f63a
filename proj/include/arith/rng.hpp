#pragma once

#include <cstdint>

namespace arith {

// Counter-based randomness: every (seed, stream, counter) triple maps to an
// independent 64-bit value, so sampling is deterministic for a fixed seed
// no matter how the index space is partitioned across workers.
namespace rng {

inline uint64_t splitmix(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline uint64_t at(uint64_t seed, uint64_t stream, uint64_t counter) {
    uint64_t h = splitmix(seed ^ 0xD1B54A32D192ED03ULL);
    h = splitmix(h ^ stream * 0x8CB92BA72F3D8DD7ULL);
    return splitmix(h ^ counter * 0x2545F4914F6CDD1DULL);
}

// uniform in [0, 1)
inline double uniform(uint64_t seed, uint64_t stream, uint64_t counter) {
    return static_cast<double>(at(seed, stream, counter) >> 11) * 0x1.0p-53;
}

} // namespace rng
} // namespace arith
