#pragma once

// Random stream contract shared by every stochastic routine:
//
//   engine   std::mt19937_64 (output sequence fixed by the C++ standard)
//   seeding  engine(seed) with the 64-bit seed as given
//   uniform  (engine() >> 11) * 2^-53, a value in [0, 1)
//   event    fires iff uniform < probability (p = 0 never fires, p = 1 always does)
//   split    split(master, r) = splitmix64_mix(master + (r + 1) * 0x9E3779B97F4A7C15)
//
// Nothing here depends on the platform's distribution implementations.

#include <cstdint>
#include <random>

namespace cyberdyn::rng {

using Engine = std::mt19937_64;

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of stream `index` derived from `master`. Distinct indices give decorrelated seeds.
constexpr std::uint64_t split(std::uint64_t master, std::uint64_t index) noexcept
{
    return mix64(master + (index + 1) * kGoldenGamma);
}

inline double uniform01(Engine& engine)
{
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Engine& engine, double probability)
{
    return uniform01(engine) < probability;
}

} // namespace cyberdyn::rng
