// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

#include "symapprox/sympoly.hpp"

#include "symapprox/permanent.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace symapprox {

PowerSums power_sums(std::span<const double> xs) {
    const std::size_t n = xs.size();
    PowerSums out;
    out.values.assign(n + 1, 0.0);
    out.values[0] = static_cast<double>(n);
    for (double x : xs) {
        double p = 1.0;
        for (std::size_t q = 1; q <= n; ++q) {
            p *= x;
            out.values[q] += p;
        }
    }
    return out;
}

double elementary_direct(std::span<const double> xs, std::size_t k) {
    return elementary_direct_exact<double>(xs, k);
}

double elementary_from_power_sums(const PowerSums& e, std::size_t k) {
    const std::size_t n = e.num_points();
    if (k < 1 || k > n) throw ArgumentError("elementary polynomial index k must satisfy 1 <= k <= N");
    const std::span<const double> head(e.values.data(), k + 1);
    return elementary_sequence<double>(head)[k];
}

std::vector<double> invert_power_sums(const PowerSums& e, double imag_tol, double residual_tol) {
    const std::size_t n = e.num_points();
    if (e.values.empty() || e.values[0] != static_cast<double>(n)) {
        throw InversionError("power sum E_0 must equal the number of points N");
    }
    if (n == 0) return {};
    const std::vector<double> elem = elementary_sequence<double>(e.values);

    // Monic p(t) = t^N + c_{N-1} t^{N-1} + ... + c_0 with c_{N-k} = (-1)^k e_k.
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 1; r < n; ++r) {
        companion(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r - 1)) = 1.0;
    }
    for (std::size_t k = 1; k <= n; ++k) {
        const double c = (k % 2 == 0) ? elem[k] : -elem[k];
        companion(static_cast<Eigen::Index>(n - k), static_cast<Eigen::Index>(n - 1)) = -c;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw InversionError("companion eigenvalue solve did not converge");

    std::vector<double> roots;
    roots.reserve(n);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const std::complex<double> z = solver.eigenvalues()[i];
        if (std::fabs(z.imag()) > imag_tol) {
            throw InversionError("power sums have a complex root (imaginary part " + std::to_string(z.imag()) + ")");
        }
        roots.push_back(z.real());
    }
    std::sort(roots.begin(), roots.end());

    const PowerSums check = power_sums(roots);
    for (std::size_t q = 0; q <= n; ++q) {
        if (std::fabs(check.values[q] - e.values[q]) > residual_tol) {
            throw InversionError("power sum residual " + std::to_string(std::fabs(check.values[q] - e.values[q])) +
                                 " at q = " + std::to_string(q) + " exceeds tolerance");
        }
    }
    return roots;
}

MonomialExponents::MonomialExponents(std::size_t num_points, std::size_t dim, std::vector<int> gamma)
    : num_points_(num_points), dim_(dim), gamma_(std::move(gamma)) {
    if (gamma_.size() != num_points_ * dim_) throw ArgumentError("exponent table must be N x d");
    if (std::any_of(gamma_.begin(), gamma_.end(), [](int g) { return g < 0; })) {
        throw ArgumentError("monomial exponents must be non-negative");
    }
}

MonomialExponents MonomialExponents::zeros(std::size_t num_points, std::size_t dim) {
    return MonomialExponents(num_points, dim, std::vector<int>(num_points * dim, 0));
}

double monomial_factor(const MonomialExponents& gamma, std::size_t i, std::span<const double> x) {
    double v = 1.0;
    for (std::size_t a = 0; a < gamma.dim(); ++a) v *= std::pow(x[a], gamma(i, a));
    return v;
}

namespace {

void check_shape(const MonomialExponents& gamma, const Configuration& x) {
    if (gamma.num_points() != x.size() || gamma.dim() != x.dim()) {
        throw ArgumentError("monomial exponents and configuration disagree on (N, d)");
    }
}

void check_positive(const Configuration& x) {
    for (double c : x.coords()) {
        if (!(c > 0.0)) throw DomainError("Ryser feature route requires strictly positive coordinates");
    }
}

} // namespace

double symmetrized_monomial(const MonomialExponents& gamma, const Configuration& x) {
    check_shape(gamma, x);
    const std::size_t n = x.size();
    if (n > kSymmetrizedDirectLimit) {
        throw SizeLimitError("direct symmetrized monomial limited to N <= " + std::to_string(kSymmetrizedDirectLimit));
    }
    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    double total = 0.0;
    do {
        double prod = 1.0;
        for (std::size_t i = 0; i < n; ++i) prod *= monomial_factor(gamma, i, x.point(sigma[i]));
        total += prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

double symmetrized_monomial_ryser(const MonomialExponents& gamma, const Configuration& x) {
    check_shape(gamma, x);
    check_positive(x);
    const std::size_t n = x.size();
    if (n > kSymmetrizedRyserLimit) {
        throw SizeLimitError("Ryser symmetrized monomial limited to N <= " + std::to_string(kSymmetrizedRyserLimit));
    }
    SquareMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = monomial_factor(gamma, i, x.point(j));
    }
    return permanent_ryser_logdomain(a);
}

SymPolyApprox::SymPolyApprox(std::vector<SymPolyTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw ArgumentError("symmetric polynomial needs at least one term");
    for (const auto& t : terms_) {
        if (t.exponents.num_points() != num_points() || t.exponents.dim() != dim()) {
            throw ArgumentError("all symmetrized monomials must share (N, d)");
        }
    }
    if (num_points() > kFeatureFormLimit) {
        throw SizeLimitError("feature form limited to N <= " + std::to_string(kFeatureFormLimit));
    }
}

std::uint64_t SymPolyApprox::feature_count() const {
    return static_cast<std::uint64_t>(terms_.size()) << num_points();
}

std::vector<double> SymPolyApprox::features(std::span<const double> x) const {
    const std::size_t n = num_points();
    const std::size_t subsets = std::size_t{1} << n;
    std::vector<double> g;
    g.reserve(terms_.size() * subsets);
    std::vector<double> f(n);
    for (const auto& term : terms_) {
        for (std::size_t j = 0; j < n; ++j) f[j] = monomial_factor(term.exponents, j, x);
        for (std::size_t s = 0; s < subsets; ++s) {
            double sum = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if ((s >> j) & 1U) sum += f[j];
            }
            g.push_back(std::log(sum));
        }
    }
    return g;
}

double SymPolyApprox::phi(std::span<const double> y) const {
    const std::size_t n = num_points();
    const std::size_t subsets = std::size_t{1} << n;
    if (y.size() != terms_.size() * subsets) throw ArgumentError("feature vector has the wrong length");
    double total = 0.0;
    for (std::size_t l = 0; l < terms_.size(); ++l) {
        double inner = 0.0;
        for (std::size_t s = 0; s < subsets; ++s) {
            const double v = std::exp(y[l * subsets + s]);
            inner += (std::popcount(s) % 2 == 1) ? -v : v;
        }
        total += terms_[l].coefficient * inner;
    }
    return (n % 2 == 1) ? -total : total;
}

double feature_form_eval(const SymPolyApprox& p, const Configuration& x) {
    if (x.size() != p.num_points() || x.dim() != p.dim()) {
        throw ArgumentError("configuration does not match the polynomial's (N, d)");
    }
    check_positive(x);
    std::vector<double> y(p.feature_count(), 0.0);
    for (std::size_t j = 0; j < x.size(); ++j) {
        const std::vector<double> g = p.features(x.point(j));
        for (std::size_t m = 0; m < y.size(); ++m) y[m] += g[m];
    }
    return p.phi(y);
}

double symmetrized_polynomial_direct(const SymPolyApprox& p, const Configuration& x) {
    double total = 0.0;
    for (const auto& term : p.terms()) total += term.coefficient * symmetrized_monomial(term.exponents, x);
    return total;
}

} // namespace symapprox
