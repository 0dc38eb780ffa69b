#pragma once

#include <cstdint>

namespace saltbox {

/// SplitMix64 pseudo-random generator (Steele, Lea & Flood; as published by
/// Sebastiano Vigna in splitmix64.c). One 64-bit word of state, advanced by
/// the golden-gamma increment; the output mix is two xor-shift-multiply
/// rounds plus a final shift. Any seed is legal, including 0.
///
/// Reference vector, first three outputs:
///   seed 0  -> 0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F
///   seed 42 -> 0xBDD732262FEB6E95, 0x28EFE333B266F103, 0x47526757130F9F52
///
/// next_double() maps the top 53 bits onto [0, 1):
///   u = (next() >> 11) * 2^-53
/// so streams are reproducible bit-for-bit from (seed, draw index) alone.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform draw in [0, 1) with 53 random bits.
    constexpr double next_double() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

} // namespace saltbox
