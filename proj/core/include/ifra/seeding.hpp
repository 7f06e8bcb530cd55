#pragma once

#include <cstdint>
#include <random>

namespace ifra {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Used to turn (master seed, stream, index) triples into
// statistically independent 64-bit seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Fixed stream tags. A stage derives its seed as derive_seed(master, tag, index)
// so that every stage can be reproduced in isolation from the master seed.
enum class SeedStream : std::uint64_t {
    cohort = 1,
    augmentation = 2,
    splits = 3,
    selection_subset = 4,
    selection_svm = 5,
};

constexpr std::uint64_t derive_seed(std::uint64_t master, SeedStream stream,
                                    std::uint64_t index = 0) noexcept {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ (static_cast<std::uint64_t>(stream) * 0xd6e8feb86659fd93ULL));
    return splitmix64(h ^ index);
}

}  // namespace ifra
