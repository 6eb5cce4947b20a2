// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>

namespace symapprox::detail {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based generator: the k-th draw is a pure function of (seed, k),
/// identical to the k-th output of a SplitMix64 stream started at `seed`.
class CounterRng {
public:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    explicit constexpr CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

    constexpr std::uint64_t at(std::uint64_t counter) const noexcept {
        return mix64(seed_ + (counter + 1) * kGamma);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform_at(std::uint64_t counter) const noexcept {
        return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
    }

    /// Independent child stream.
    constexpr CounterRng split(std::uint64_t stream) const noexcept {
        return CounterRng(mix64(seed_ ^ mix64(stream + kGamma)));
    }

    constexpr std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
};

/// Sequential view over a CounterRng.
class RngStream {
public:
    explicit constexpr RngStream(std::uint64_t seed) noexcept : rng_(seed) {}

    constexpr std::uint64_t next_u64() noexcept { return rng_.at(counter_++); }
    constexpr double next_uniform() noexcept { return rng_.uniform_at(counter_++); }

    /// Uniform integer in [0, bound) by rejection.
    constexpr std::uint64_t next_below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t v = 0;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

    /// Standard normal draw by Box-Muller (cosine branch only).
    double next_normal() noexcept {
        double u1 = next_uniform();
        while (u1 <= 0.0) u1 = next_uniform();
        const double u2 = next_uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    CounterRng rng_;
    std::uint64_t counter_ = 0;
};

/// 64-bit FNV-1a over a byte sequence.
class Fnv1a64 {
public:
    void update(std::span<const unsigned char> bytes) noexcept {
        for (unsigned char b : bytes) {
            hash_ ^= b;
            hash_ *= 0x100000001b3ULL;
        }
    }

    /// Feeds an integer as 8 little-endian bytes.
    void update_i64(std::int64_t value) noexcept {
        auto u = static_cast<std::uint64_t>(value);
        unsigned char bytes[8];
        for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>((u >> (8 * i)) & 0xffU);
        update(bytes);
    }

    std::uint64_t digest() const noexcept { return hash_; }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

} // namespace symapprox::detail
