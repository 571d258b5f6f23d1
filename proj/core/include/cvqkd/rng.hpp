#pragma once

#include <cstdint>
#include <random>

namespace cvqkd {

// splitmix64; used to derive independent per-block generator seeds from a
// (run seed, block index) pair so blocks can be simulated in parallel with
// reproducible output.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 block_rng(std::uint64_t seed, std::uint64_t block) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ (block + 1)));
}

} // namespace cvqkd
