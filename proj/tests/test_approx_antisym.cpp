// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

#include "symapprox/approx_antisym.hpp"
#include "symapprox/detail/rng.hpp"
#include "symapprox/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace symapprox;

namespace {

Configuration random_config(detail::RngStream& rng, std::size_t n, std::size_t d) {
    std::vector<double> c(n * d);
    for (auto& v : c) v = rng.next_uniform();
    return Configuration(n, d, c);
}

Permutation shuffle(detail::RngStream& rng, std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.next_below(i)]);
    return Permutation(p);
}

AntisymBuildOptions linear(double tau = 1e-3) {
    AntisymBuildOptions o;
    o.construction = AntisymConstruction::linear;
    o.tau = tau;
    return o;
}

} // namespace

TEST_CASE("vandermonde product") {
    const std::vector<double> a{1, 2};
    const std::vector<double> b{3, 1, 2};
    const std::vector<double> c{0.5, 0.2, 0.5};
    CHECK(vandermonde_product(a) == -1);
    CHECK(vandermonde_product(b) == -2);
    CHECK(vandermonde_product(c) == 0);
    CHECK(sorting_denominator(2) == -1);
    CHECK(sorting_denominator(3) == -2);
    CHECK(sorting_denominator(4) == 12);
}

TEST_CASE("sorting construction coefficient for N = 2") {
    const LatticeSpec spec(0.5, 1, 0.0, 1.0);
    const auto f = builtin_target("vandermonde-sum-antisym");
    const auto t = build_antisym(f, spec, 2);
    REQUIRE(t.entry_count() == 1);
    CHECK(t.wedge_count() == 3);
    const WedgeIndex z{{0, 1}};
    const double fz = f(wedge_configuration(spec, z));
    CHECK(t.coefficient(z) == -fz);
    CHECK(eval_antisym(t, wedge_configuration(spec, z)) == fz);
    CHECK(eval_antisym(t, Configuration(2, 1, {0.1, 0.3})) == 0.0);
}

TEST_CASE("linear construction denominator uses real positions") {
    const LatticeSpec spec(0.5, 2, 0.0, 1.0);
    // z_1 = (0, 0), z_2 = (0.5, 0): z_1 - z_2 = (-0.5, 0).
    const auto corner = wedge_configuration(spec, WedgeIndex{{0, 2}});
    const std::vector<double> a{1.0, 0.0};
    CHECK(linear_vandermonde(a, corner) == -0.5);
}

TEST_CASE("direction search") {
    const LatticeSpec s1(0.25, 1, 0.0, 1.0);
    CHECK(choose_direction(s1, WedgeIndex{{0, 2, 3}}, 1e-3, 7) == std::vector<double>{1.0});

    const LatticeSpec s2(0.25, 2, 0.0, 1.0);
    const WedgeIndex along_x{{s2.id_of(LatticePoint{{0, 1}}), s2.id_of(LatticePoint{{2, 1}})}};
    const std::vector<double> perpendicular{0.0, 1.0};
    CHECK_FALSE(direction_accepts(s2, along_x, perpendicular, 1e-3));
    const std::vector<double> parallel{1.0, 0.0};
    CHECK(direction_accepts(s2, along_x, parallel, 1e-3));

    const WedgeIndex z{{0, 5, 9}};
    const auto a = choose_direction(s2, z, 1e-3, 42);
    CHECK(a == choose_direction(s2, z, 1e-3, 42));
    CHECK(std::hypot(a[0], a[1]) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(direction_accepts(s2, z, a, 1e-3));

    // Three points where every direction is within cos 0.9 of orthogonal to some pair.
    const WedgeIndex hard{{s2.id_of(LatticePoint{{0, 0}}), s2.id_of(LatticePoint{{0, 1}}), s2.id_of(LatticePoint{{1, 0}})}};
    CHECK_THROWS_AS(choose_direction(s2, hard, 0.9, 1), BuildError);
}

TEST_CASE("equivariant sort map") {
    const LatticeSpec spec(0.25, 1, 0.0, 1.0);
    const WedgeIndex z{{0, 1, 3}};
    CHECK(equivariant_sort_map(spec, z, Configuration(3, 1, {0.1, 0.3, 0.9})) == std::vector<double>{1, 2, 3});
    const auto ys = equivariant_sort_map(spec, z, Configuration(3, 1, {0.3, 0.1, 0.9}));
    CHECK(ys == std::vector<double>{2, 1, 3});
    CHECK(vandermonde_product(ys) == -sorting_denominator(3));
    CHECK_THROWS_AS(equivariant_sort_map(spec, z, Configuration(3, 1, {0.6, 0.1, 0.9})), ArgumentError);

    detail::RngStream rng(8);
    for (int i = 0; i < 100; ++i) {
        const auto x = random_config(rng, 3, 1);
        const auto cell = locate(spec, x);
        if (!cell.wedge.distinct()) continue;
        const auto y = equivariant_sort_map(spec, cell.wedge, x);
        CHECK(vandermonde_product(y) == cell.parity * sorting_denominator(3));
    }
}

TEST_CASE("zero target gives zero everywhere") {
    const TargetFunction zero("zero", [](const Configuration&) { return 0.0; }, Symmetry::antisymmetric);
    const LatticeSpec spec(0.25, 2, 0.0, 1.0);
    const auto t = build_antisym(zero, spec, 2, linear());
    detail::RngStream rng(6);
    for (int i = 0; i < 100; ++i) CHECK(eval_antisym(t, random_config(rng, 2, 2)) == 0.0);
}

TEST_CASE("sign equivariance is bit exact") {
    detail::RngStream rng(12);
    for (auto construction : {AntisymConstruction::sorting, AntisymConstruction::linear}) {
        AntisymBuildOptions o;
        o.construction = construction;
        const LatticeSpec spec(0.25, 2, 0.0, 1.0);
        const auto t = build_antisym(builtin_target("vandermonde-gauss-antisym"), spec, 3, o);
        for (int i = 0; i < 300; ++i) {
            const auto x = random_config(rng, 3, 2);
            const auto sigma = shuffle(rng, 3);
            const double base = eval_antisym(t, x);
            CHECK(eval_antisym(t, permute(x, sigma)) == (parity(sigma) < 0 ? -base : base));
        }
    }
}

TEST_CASE("smooth linear construction is bit exactly sign equivariant") {
    AntisymBuildOptions o = linear();
    o.smooth_width = 0.05;
    const LatticeSpec spec(0.25, 1, 0.0, 1.0);
    const auto t = build_antisym(builtin_target("vandermonde-sum-antisym"), spec, 3, o);
    detail::RngStream rng(13);
    for (int i = 0; i < 300; ++i) {
        const auto x = random_config(rng, 3, 1);
        const auto sigma = shuffle(rng, 3);
        const double base = eval_antisym(t, x);
        CHECK(eval_antisym(t, permute(x, sigma)) == (parity(sigma) < 0 ? -base : base));
    }
    AntisymBuildOptions sorting;
    sorting.smooth_width = 0.05;
    CHECK_THROWS_AS(build_antisym(builtin_target("vandermonde-sum-antisym"), spec, 3, sorting), ArgumentError);
}

TEST_CASE("both constructions reproduce f at corners and permuted corners") {
    const LatticeSpec spec(0.25, 2, 0.0, 1.0);
    const auto f = builtin_target("vandermonde-gauss-antisym");
    const auto a = build_antisym(f, spec, 2);
    const auto b = build_antisym(f, spec, 2, linear());
    detail::RngStream rng(14);
    for (std::uint64_t r = 0; r < a.entry_count(); ++r) {
        const auto corner = wedge_configuration(spec, distinct_wedge_unrank(spec, 2, r));
        const auto x = permute(corner, shuffle(rng, 2));
        CHECK(std::fabs(eval_antisym(a, x) - eval_antisym(b, x)) <= 1e-10);
        CHECK(eval_antisym(a, corner) == doctest::Approx(f(corner)).epsilon(1e-14));
    }
}

TEST_CASE("sup error bound for a Gaussian Vandermonde target") {
    const LatticeSpec spec(0.125, 1, 0.0, 1.0);
    const auto f = builtin_target("vandermonde-gauss-antisym");
    const auto t = build_antisym(f, spec, 2);
    // Analytic gradient norm bound of (x1 - x2) exp(-(x1^2 + x2^2)) on [0, 1]^2 is below sqrt(2).
    detail::RngStream rng(15);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const auto x = random_config(rng, 2, 1);
        worst = std::max(worst, std::fabs(f(x) - eval_antisym(t, x)));
    }
    CHECK(worst <= 0.125 * std::sqrt(2.0) * std::sqrt(2.0));
    CHECK(worst > 0.0);
}

TEST_CASE("build guards") {
    const LatticeSpec spec(0.5, 1, 0.0, 1.0);
    CHECK_THROWS_AS(build_antisym(builtin_target("sum-coords"), spec, 2), ArgumentError);
    AntisymBuildOptions capped;
    capped.cap = 2;
    CHECK_THROWS_AS(build_antisym(builtin_target("vandermonde-sum-antisym"), spec, 2, capped), CapacityError);
    const auto empty = build_antisym(builtin_target("vandermonde-sum-antisym"), spec, 3);
    CHECK(empty.entry_count() == 0);
    CHECK(eval_antisym(empty, Configuration(3, 1, {0.1, 0.6, 0.9})) == 0.0);
}
