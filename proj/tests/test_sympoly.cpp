// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

#include "symapprox/detail/rng.hpp"
#include "symapprox/errors.hpp"
#include "symapprox/sympoly.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>

using namespace symapprox;

TEST_CASE("power sums") {
    const std::vector<double> x{1, 2, 3};
    CHECK(power_sums(x).values == std::vector<double>{3, 6, 14, 36});
    const std::vector<double> zeros{0, 0};
    CHECK(power_sums(zeros).values == std::vector<double>{2, 0, 0});
    const std::vector<double> c(4, 0.5);
    const auto e = power_sums(c);
    for (std::size_t q = 0; q <= 4; ++q) CHECK(e.values[q] == doctest::Approx(4 * std::pow(0.5, q)));
}

TEST_CASE("elementary polynomials by enumeration") {
    const std::vector<double> x{1, 2, 3};
    CHECK(elementary_direct(x, 1) == 6);
    CHECK(elementary_direct(x, 2) == 11);
    CHECK(elementary_direct(x, 3) == 6);
    CHECK_THROWS_AS(elementary_direct(x, 4), ArgumentError);
    CHECK_THROWS_AS(elementary_direct(x, 0), ArgumentError);
}

TEST_CASE("Newton-Girard from power sums") {
    const std::vector<double> x{1, 2, 3};
    const auto e = power_sums(x);
    CHECK(elementary_from_power_sums(e, 1) == 6);
    CHECK(elementary_from_power_sums(e, 2) == 11);
    CHECK(elementary_from_power_sums(e, 3) == 6);
}

TEST_CASE("Newton-Girard is exact on integers") {
    detail::RngStream rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng.next_below(6);
        std::vector<std::int64_t> xs(n);
        for (auto& v : xs) v = static_cast<std::int64_t>(rng.next_below(11)) - 5;
        std::vector<std::int64_t> power(n + 1, 0);
        for (std::size_t q = 0; q <= n; ++q) {
            for (auto v : xs) {
                std::int64_t p = 1;
                for (std::size_t k = 0; k < q; ++k) p *= v;
                power[q] += p;
            }
        }
        const auto seq = elementary_sequence<std::int64_t>(power);
        for (std::size_t k = 1; k <= n; ++k) CHECK(seq[k] == elementary_direct_exact<std::int64_t>(xs, k));
    }
}

TEST_CASE("power sum inversion") {
    const std::vector<double> x{3, 1, 2};
    const auto roots = invert_power_sums(power_sums(x));
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == doctest::Approx(1).epsilon(1e-9));
    CHECK(roots[1] == doctest::Approx(2).epsilon(1e-9));
    CHECK(roots[2] == doctest::Approx(3).epsilon(1e-9));

    const std::vector<double> repeated{0.5, 0.5};
    const auto r2 = invert_power_sums(power_sums(repeated));
    CHECK(std::fabs(r2[0] - 0.5) < 1e-7);
    CHECK(std::fabs(r2[1] - 0.5) < 1e-7);

    auto bad = power_sums(x);
    bad.values[0] = 2;
    CHECK_THROWS_AS(invert_power_sums(bad), InversionError);

    // x^2 + 1 has no real roots: E = (2, 0, -2).
    CHECK_THROWS_AS(invert_power_sums(PowerSums{{2, 0, -2}}), InversionError);
}

TEST_CASE("symmetrized monomials") {
    const auto x = Configuration(2, 1, {1, 2});
    CHECK(symmetrized_monomial(MonomialExponents::zeros(2, 1), x) == 2);
    CHECK(symmetrized_monomial(MonomialExponents(2, 1, {1, 2}), x) == 6);
    CHECK(symmetrized_monomial_ryser(MonomialExponents(2, 1, {1, 2}), x) == doctest::Approx(6).epsilon(1e-13));
    CHECK(symmetrized_monomial_ryser(MonomialExponents::zeros(3, 1), Configuration(3, 1, {0.2, 0.4, 0.9})) ==
          doctest::Approx(6).epsilon(1e-13));
    CHECK_THROWS_AS(symmetrized_monomial_ryser(MonomialExponents(2, 1, {1, 2}), Configuration(2, 1, {0.0, 1.0})),
                    DomainError);

    const auto y = Configuration::from_points({{0.3, 0.7}, {0.9, 0.2}});
    const MonomialExponents g(2, 2, {1, 2, 3, 0});
    const MonomialExponents swapped(2, 2, {3, 0, 1, 2});
    CHECK(symmetrized_monomial(g, y) == doctest::Approx(symmetrized_monomial(swapped, y)).epsilon(1e-14));
    const double direct = 0.3 * 0.7 * 0.7 * 0.9 * 0.9 * 0.9 + 0.9 * 0.2 * 0.2 * 0.3 * 0.3 * 0.3;
    CHECK(symmetrized_monomial(g, y) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(symmetrized_monomial_ryser(g, y) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("feature form of a symmetric polynomial") {
    const SymPolyApprox constant({{1.5, MonomialExponents::zeros(3, 1)}});
    const auto x3 = Configuration(3, 1, {0.2, 0.5, 0.7});
    CHECK(feature_form_eval(constant, x3) == doctest::Approx(1.5 * 6).epsilon(1e-12));

    const SymPolyApprox e2({{1.0, MonomialExponents(2, 1, {1, 1})}});
    const auto x = Configuration(2, 1, {1, 2});
    CHECK(feature_form_eval(e2, x) == doctest::Approx(4).epsilon(1e-12));
    const std::vector<double> xs{1, 2};
    CHECK(feature_form_eval(e2, x) == doctest::Approx(2 * elementary_direct(xs, 2)).epsilon(1e-12));
    CHECK(e2.feature_count() == 4);

    const SymPolyApprox p({{0.5, MonomialExponents(2, 2, {1, 0, 0, 2})}, {-2.0, MonomialExponents(2, 2, {2, 1, 1, 1})}});
    CHECK(p.feature_count() == 8);
    const auto y = Configuration::from_points({{0.3, 0.7}, {0.9, 0.2}});
    CHECK(feature_form_eval(p, y) == doctest::Approx(symmetrized_polynomial_direct(p, y)).epsilon(1e-12));
    const auto g = p.features(y.point(0));
    REQUIRE(g.size() == 8);
    CHECK(std::isinf(g[0]));
    CHECK(g[0] < 0);
}
