// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

namespace symapprox::detail {

__extension__ using uint128 = unsigned __int128;

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double value) noexcept {
        const double t = sum_ + value;
        if (std::fabs(sum_) >= std::fabs(value)) {
            comp_ += (sum_ - t) + value;
        } else {
            comp_ += (value - t) + sum_;
        }
        sum_ = t;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Exact binomial coefficient, or nullopt when it does not fit in 64 bits.
inline std::optional<std::uint64_t> checked_binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return std::uint64_t{0};
    k = std::min(k, n - k);
    uint128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // r * (n - k + i) / i stays integral at every step.
        r = r * (n - k + i) / i;
        if (r > ~std::uint64_t{0}) return std::nullopt;
    }
    return static_cast<std::uint64_t>(r);
}

inline std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) return std::nullopt;
    return out;
}

inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        auto next = checked_mul(out, base);
        if (!next) return std::nullopt;
        out = *next;
    }
    return out;
}

inline std::uint64_t factorial(std::uint64_t n) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 2; i <= n; ++i) out *= i;
    return out;
}

/// C99 hexadecimal float literal; round-trips bit-exactly through parse_hex_double.
inline std::string hex_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", value);
    return buf;
}

/// Parses decimal or hexadecimal float text; the whole token must be consumed.
inline std::optional<double> parse_double(std::string_view text) {
    std::string owned(text);
    if (owned.empty()) return std::nullopt;
    char* end = nullptr;
    const double value = std::strtod(owned.c_str(), &end);
    if (end != owned.c_str() + owned.size()) return std::nullopt;
    return value;
}

/// Decimal text with 17 significant digits.
inline std::string decimal17(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

} // namespace symapprox::detail
