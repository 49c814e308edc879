#include "spinchaos/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace spinchaos::rng {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

Stream::Stream(std::uint64_t seed) noexcept : seed_(seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) {
        s = mix64(s);
        word = s;
    }
    // xoshiro must not start from the all-zero state.
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[3] = 1;
}

Stream Stream::child(std::uint64_t lane) const noexcept {
    return Stream(mix64(seed_ ^ mix64(lane + 1)));
}

std::uint64_t Stream::next_u64() noexcept {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Stream::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Stream::uniform(double lo, double hi) noexcept {
    return lo + uniform() * (hi - lo);
}

double Stream::normal() noexcept {
    double u1 = uniform();
    const double u2 = uniform();
    if (u1 <= 0.0) u1 = std::numeric_limits<double>::min();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace spinchaos::rng
