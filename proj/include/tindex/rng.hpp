#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tindex {

// Reproducibility note: mt19937_64 output is pinned by the standard, but the
// standard *distributions* are not. All variate mappings are therefore done
// by hand so that identical (seed, item) pairs give identical streams on any
// toolchain.

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Independent stream per work item; safe for data-parallel sweeps.
inline std::mt19937_64 item_rng(uint64_t seed, uint64_t item) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(item + 1)));
}

// uniform in [0, 1)
inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// uniform in [-1, 1]
inline double uniform_pm1(std::mt19937_64& g) {
    return 2.0 * uniform01(g) - 1.0;
}

// standard normal, Box-Muller (uses one pair per call, no cached state)
inline double gaussian(std::mt19937_64& g) {
    double u1 = 0.0;
    do { u1 = uniform01(g); } while (u1 <= 0.0);
    double u2 = uniform01(g);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

} // namespace tindex
