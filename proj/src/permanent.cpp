// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

#include "symapprox/permanent.hpp"

#include "symapprox/detail/numeric.hpp"
#include "symapprox/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

namespace symapprox {

SquareMatrix::SquareMatrix(std::size_t n) : SquareMatrix(n, std::vector<double>(n * n, 0.0)) {}

SquareMatrix::SquareMatrix(std::size_t n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {
    if (n_ == 0) throw ArgumentError("square matrix must have n >= 1");
    if (entries_.size() != n_ * n_) throw ArgumentError("square matrix needs n*n entries");
    for (double v : entries_) {
        if (!std::isfinite(v)) throw ArgumentError("square matrix entries must be finite");
    }
}

SquareMatrix SquareMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t n = rows.size();
    std::vector<double> flat;
    flat.reserve(n * n);
    for (const auto& row : rows) {
        if (row.size() != n) throw ArgumentError("square matrix rows must all have length n");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return SquareMatrix(n, std::move(flat));
}

SquareMatrix SquareMatrix::transposed() const {
    SquareMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
}

double permanent_bruteforce(const SquareMatrix& a) {
    const std::size_t n = a.size();
    if (n > kBruteForcePermanentLimit) {
        throw SizeLimitError("brute-force permanent limited to n <= " + std::to_string(kBruteForcePermanentLimit));
    }
    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    double total = 0.0;
    do {
        double prod = 1.0;
        for (std::size_t i = 0; i < n; ++i) prod *= a(i, sigma[i]);
        total += prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

double permanent_ryser(const SquareMatrix& a) {
    const std::size_t n = a.size();
    if (n > kRyserPermanentLimit) {
        throw SizeLimitError("Ryser permanent limited to n <= " + std::to_string(kRyserPermanentLimit));
    }
    std::vector<double> row_sums(n, 0.0);
    detail::CompensatedSum total;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < subsets; ++k) {
        // Gray code k ^ (k >> 1) differs from its predecessor in bit ctz(k).
        const auto j = static_cast<std::size_t>(std::countr_zero(k));
        const std::uint64_t gray = k ^ (k >> 1);
        const bool added = ((gray >> j) & 1U) != 0;
        double prod = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            row_sums[i] += added ? a(i, j) : -a(i, j);
            prod *= row_sums[i];
        }
        total.add((std::popcount(gray) % 2 == 1) ? -prod : prod);
    }
    const double value = total.value();
    return (n % 2 == 1) ? -value : value;
}

double permanent_ryser_logdomain(const SquareMatrix& a) {
    const std::size_t n = a.size();
    if (n > kRyserPermanentLimit) {
        throw SizeLimitError("Ryser permanent limited to n <= " + std::to_string(kRyserPermanentLimit));
    }
    for (double v : a.entries()) {
        if (v < 0.0) throw DomainError("log-domain permanent requires non-negative entries");
    }
    std::vector<double> row_sums(n, 0.0);
    // Number of strictly positive entries of each row inside the subset; a
    // row sum is exactly zero iff its count is zero.
    std::vector<std::size_t> positive(n, 0);
    detail::CompensatedSum total;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < subsets; ++k) {
        const auto j = static_cast<std::size_t>(std::countr_zero(k));
        const std::uint64_t gray = k ^ (k >> 1);
        const bool added = ((gray >> j) & 1U) != 0;
        double log_prod = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = a(i, j);
            if (v > 0.0) {
                if (added) {
                    ++positive[i];
                    row_sums[i] += v;
                } else {
                    --positive[i];
                    row_sums[i] -= v;
                }
                if (positive[i] == 0) row_sums[i] = 0.0;
            }
            log_prod += positive[i] == 0 ? -INFINITY : std::log(row_sums[i]);
        }
        const double prod = std::exp(log_prod);
        total.add((std::popcount(gray) % 2 == 1) ? -prod : prod);
    }
    const double value = total.value();
    return (n % 2 == 1) ? -value : value;
}

} // namespace symapprox
