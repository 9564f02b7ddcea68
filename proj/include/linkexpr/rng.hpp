#pragma once

#include <cstdint>
#include <string_view>

namespace linkexpr {

/// SplitMix64 (Steele, Lea & Flood 2014): 64-bit state, output
///   z = (state += 0x9E3779B97F4A7C15);
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
///   return z ^ (z >> 31);
/// All derived quantities below are specified bit-for-bit so that datasets
/// reproduce across platforms and implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept;
    /// Uniform double in [0, 1): top 53 bits of next() times 2^-53.
    double uniform01() noexcept;
    /// Uniform integer in [lo, hi] by rejection on the top bits (no modulo bias).
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) noexcept;
    /// uniform01() < p. Never true for p <= 0, always true for p >= 1.
    bool bernoulli(double p) noexcept;
    /// Standard normal via Box-Muller (consumes two draws).
    double normal() noexcept;

private:
    std::uint64_t state_;
};

/// The SplitMix64 output mix applied to a single value.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// 64-bit FNV-1a of a stage name.
std::uint64_t fnv1a64(std::string_view text) noexcept;

/// Sub-seed for (seed, stage, index): mix64(mix64(seed ^ fnv1a64(stage)) + index * 0x9E3779B97F4A7C15).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stage, std::uint64_t index) noexcept;

}  // namespace linkexpr
