// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace symapprox {

/// Dense n x n real matrix, row-major.
class SquareMatrix {
public:
    explicit SquareMatrix(std::size_t n);
    SquareMatrix(std::size_t n, std::vector<double> entries);

    static SquareMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t size() const noexcept { return n_; }

    double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * n_ + j]; }

    std::span<const double> entries() const noexcept { return entries_; }

    SquareMatrix transposed() const;

private:
    std::size_t n_;
    std::vector<double> entries_;
};

inline constexpr std::size_t kBruteForcePermanentLimit = 10;
inline constexpr std::size_t kRyserPermanentLimit = 30;

/// Sum over all n! permutations of prod_i A[i][sigma(i)]. Oracle; n <= 10.
double permanent_bruteforce(const SquareMatrix& a);

/// Ryser inclusion-exclusion with Gray-code subset order, O(2^n n); n <= 30.
/// The alternating outer sum is compensated.
double permanent_ryser(const SquareMatrix& a);

/// Ryser formula with each subset product formed as exp(sum_i log rowsum_i).
/// Entries must be non-negative; a subset leaving some row sum at zero
/// contributes nothing (exp(-inf) = 0).
double permanent_ryser_logdomain(const SquareMatrix& a);

} // namespace symapprox
