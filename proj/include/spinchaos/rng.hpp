// rng.hpp — counter-based random streams.
//
// Sub-streams are derived by hashing (seed, lane) rather than by sequential
// splitting, so a realization's draws never depend on how work was scheduled
// across threads or on how many sibling realizations exist.

#pragma once

#include <array>
#include <cstdint>

namespace spinchaos::rng {

// SplitMix64 finalizer; also used to derive child seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// xoshiro256++ seeded through SplitMix64. Explicit uniform/normal recipes
// keep draws identical across standard libraries.
class Stream {
public:
    explicit Stream(std::uint64_t seed) noexcept;

    // Deterministic sub-stream for (this stream, lane).
    Stream child(std::uint64_t lane) const noexcept;

    std::uint64_t next_u64() noexcept;

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() noexcept;
    // Uniform in [lo, hi).
    double uniform(double lo, double hi) noexcept;
    // Standard normal via Box-Muller.
    double normal() noexcept;

    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_ = 0;
    std::array<std::uint64_t, 4> state_{};
};

}  // namespace spinchaos::rng
