#pragma once

#include <cstdint>
#include <random>

namespace interferolab {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one engine draw. Used
/// instead of std::uniform_real_distribution so that sample streams are
/// identical across standard library implementations.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of the independent substream owned by one Monte Carlo worker.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t worker) {
    return splitmix64(splitmix64(master) ^ splitmix64(worker + 0x632be59bd9b4e019ULL));
}

}  // namespace interferolab
