#pragma once

#include <cstdint>
#include <random>

namespace phasekit {

/// Engine for (seed, stream); distinct streams give independent sequences
/// for parallel shards.  mt19937_64 and seed_seq are fully specified by the
/// standard, so sequences are reproducible across platforms.
inline std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

/// Uniform double in [0, 1) with 53 random bits.  std::uniform_real_distribution
/// is implementation-defined, which would break bit-for-bit reproducibility.
inline double uniform_double(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n) without modulo bias.
inline std::uint64_t uniform_index(std::mt19937_64& engine, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
        r = engine();
    } while (r >= limit);
    return r % n;
}

}  // namespace phasekit
