#pragma once

#include <cstdint>
#include <random>

namespace aucpower {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; used to decorrelate seeds derived from small integers.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Independent generator for iteration `index` of a run seeded with
// `master_seed`. Depends only on the pair, so any scheduling of iterations
// across threads reproduces the same draws.
inline Rng substream(std::uint64_t master_seed, std::uint64_t index) {
    return Rng(mix64(mix64(master_seed) ^ mix64(index + 0x632BE59BD9B4E019ULL)));
}

// Fresh non-deterministic seed for callers that did not supply one.
std::uint64_t random_seed();

}  // namespace aucpower
