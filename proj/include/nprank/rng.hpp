#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace nprank {

// splitmix64 step; used both as a generator for seed mixing and to key
// per-stream engines so that stream i can be created without generating
// streams 0..i-1 first.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic sub-stream engine keyed on (seed, a, b). mt19937_64 output
// is fully specified by the standard, so results are portable.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t s = seed;
    std::uint64_t k = splitmix64(s) ^ (a * 0x9e3779b97f4a7c15ULL);
    k = splitmix64(k);
    k ^= b * 0xc2b2ae3d27d4eb4fULL;
    return std::mt19937_64(splitmix64(k));
}

// Unbiased draw from [0, n) by rejection; avoids the implementation-defined
// std::uniform_int_distribution.
inline std::uint64_t random_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % n;
}

template <typename T>
void shuffle_fisher_yates(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(random_below(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

// Uniform in [0, 1) with 53 random bits.
inline double random_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace nprank
