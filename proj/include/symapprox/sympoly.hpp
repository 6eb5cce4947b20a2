// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sympoly.hpp
 * @brief Symmetric-polynomial machinery.
 *
 * For d = 1 the power sums E_q(X) = sum_n x_n^q, q = 0..N, determine the
 * multiset {x_n}; elementary symmetric polynomials follow from them by the
 * Newton-Girard recurrence and the multiset is recovered as the roots of
 * t^N - e_1 t^{N-1} + ... + (-1)^N e_N.
 *
 * For d >= 1 a symmetrized monomial sum_sigma prod_i prod_a x_{sigma(i),a}^{gamma_{i,a}}
 * is the permanent of [f_i(x_j)], f_i(x) = prod_a x_a^{gamma_{i,a}}. On
 * positive inputs Ryser's formula turns it into phi(sum_j g(x_j)) with
 * 2^N features per monomial.
 */

#pragma once

#include "symapprox/core.hpp"
#include "symapprox/errors.hpp"

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace symapprox {

/// values[q] = sum_n x_n^q for q = 0..N; values[0] == N.
struct PowerSums {
    std::vector<double> values;

    std::size_t num_points() const noexcept { return values.empty() ? 0 : values.size() - 1; }
};

PowerSums power_sums(std::span<const double> xs);

inline constexpr std::size_t kElementaryDirectLimit = 12;

/// e_k by explicit enumeration of k-subsets. Works for any arithmetic type,
/// so integer inputs give exact results. Requires 1 <= k <= N <= 12.
template <class T>
T elementary_direct_exact(std::span<const T> xs, std::size_t k) {
    const std::size_t n = xs.size();
    if (n > kElementaryDirectLimit) {
        throw SizeLimitError("direct elementary polynomial limited to N <= " + std::to_string(kElementaryDirectLimit));
    }
    if (k < 1 || k > n) throw ArgumentError("elementary polynomial index k must satisfy 1 <= k <= N");
    T total{0};
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
        T prod{1};
        for (std::size_t j = 0; j < n; ++j) {
            if ((mask >> j) & 1U) prod *= xs[j];
        }
        total += prod;
    }
    return total;
}

/// e_0..e_K from power sums E_1..E_K via k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} E_i,
/// which expands the Newton-Girard determinant row by row.
/// `power` holds E_0..E_K (E_0 unused). For integer T the divisions are exact.
template <class T>
std::vector<T> elementary_sequence(std::span<const T> power) {
    const std::size_t top = power.empty() ? 0 : power.size() - 1;
    std::vector<T> e(top + 1, T{0});
    e[0] = T{1};
    for (std::size_t k = 1; k <= top; ++k) {
        T acc{0};
        for (std::size_t i = 1; i <= k; ++i) {
            const T term = e[k - i] * power[i];
            if (i % 2 == 1) {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e[k] = acc / static_cast<T>(k);
    }
    return e;
}

double elementary_direct(std::span<const double> xs, std::size_t k);

/// e_k from power sums; 1 <= k <= N.
double elementary_from_power_sums(const PowerSums& e, std::size_t k);

/// Recovers the multiset whose power sums are `e`, sorted ascending, through
/// the eigenvalues of the companion matrix. Throws InversionError when
/// E_0 != N, a root has imaginary part above `imag_tol`, or the power sums of
/// the result miss the input by more than `residual_tol` in any entry.
std::vector<double> invert_power_sums(const PowerSums& e, double imag_tol = 1e-7, double residual_tol = 1e-7);

/// Non-negative integer exponents gamma_{i,a}, N x d, row-major.
class MonomialExponents {
public:
    MonomialExponents(std::size_t num_points, std::size_t dim, std::vector<int> gamma);

    static MonomialExponents zeros(std::size_t num_points, std::size_t dim);

    std::size_t num_points() const noexcept { return num_points_; }
    std::size_t dim() const noexcept { return dim_; }
    int operator()(std::size_t i, std::size_t alpha) const noexcept { return gamma_[i * dim_ + alpha]; }

    bool operator==(const MonomialExponents&) const = default;

private:
    std::size_t num_points_;
    std::size_t dim_;
    std::vector<int> gamma_;
};

/// f_i(x) = prod_a x_a^{gamma_{i,a}}.
double monomial_factor(const MonomialExponents& gamma, std::size_t i, std::span<const double> x);

inline constexpr std::size_t kSymmetrizedDirectLimit = 8;
inline constexpr std::size_t kSymmetrizedRyserLimit = 20;
inline constexpr std::size_t kFeatureFormLimit = 12;

/// sum over S(N) of prod_i f_i(x_{sigma(i)}); N <= 8. Repeated rows of gamma
/// are not divided out.
double symmetrized_monomial(const MonomialExponents& gamma, const Configuration& x);

/// Same value as the permanent of [f_i(x_j)] via the log-domain Ryser
/// formula. Coordinates must be strictly positive; N <= 20.
double symmetrized_monomial_ryser(const MonomialExponents& gamma, const Configuration& x);

struct SymPolyTerm {
    double coefficient;
    MonomialExponents exponents;
};

/// Linear combination of L >= 1 symmetrized monomials sharing (N, d).
class SymPolyApprox {
public:
    explicit SymPolyApprox(std::vector<SymPolyTerm> terms);

    const std::vector<SymPolyTerm>& terms() const noexcept { return terms_; }
    std::size_t num_points() const noexcept { return terms_.front().exponents.num_points(); }
    std::size_t dim() const noexcept { return terms_.front().exponents.dim(); }

    /// M = L * 2^N.
    std::uint64_t feature_count() const;

    /// g(x): component (l, S) = log sum_{j in S} f^(l)_j(x), ordered by l then
    /// by subset bitmask S = 0 .. 2^N - 1. The empty subset gives -inf.
    std::vector<double> features(std::span<const double> x) const;

    /// phi(Y) = (-1)^N sum_l c_l sum_S (-1)^{|S|} exp(Y_{l,S}).
    double phi(std::span<const double> y) const;

private:
    std::vector<SymPolyTerm> terms_;
};

/// phi(sum_j g(x_j)), summing point features in index order. Coordinates must
/// be strictly positive; N <= 12.
double feature_form_eval(const SymPolyApprox& p, const Configuration& x);

/// sum_l c_l * symmetrized_monomial(gamma_l, x).
double symmetrized_polynomial_direct(const SymPolyApprox& p, const Configuration& x);

} // namespace symapprox
