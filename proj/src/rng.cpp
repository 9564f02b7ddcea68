#include "linkexpr/rng.hpp"

#include <cmath>
#include <numbers>

namespace linkexpr {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() noexcept {
    state_ += kGolden;
    return mix64(state_);
}

double SplitMix64::uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t SplitMix64::uniform_int(std::uint64_t lo, std::uint64_t hi) noexcept {
    const std::uint64_t span = hi - lo;
    if (span == ~std::uint64_t{0}) return next();
    const std::uint64_t range = span + 1;
    // Smallest all-ones mask covering span; redraw until the masked value fits.
    std::uint64_t mask = span;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    while (true) {
        std::uint64_t x = next() & mask;
        if (x < range) return lo + x;
    }
}

bool SplitMix64::bernoulli(double p) noexcept { return uniform01() < p; }

double SplitMix64::normal() noexcept {
    double u1 = 0.0;
    do {
        u1 = uniform01();
    } while (u1 <= 0.0);
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t fnv1a64(std::string_view text) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stage, std::uint64_t index) noexcept {
    return mix64(mix64(seed ^ fnv1a64(stage)) + index * kGolden);
}

}  // namespace linkexpr
