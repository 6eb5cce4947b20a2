// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

#include "symapprox/approx_sym.hpp"
#include "symapprox/detail/rng.hpp"
#include "symapprox/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace symapprox;

namespace {

TargetFunction constant(double c) {
    return TargetFunction("constant", [c](const Configuration&) { return c; }, Symmetry::symmetric);
}

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

} // namespace

TEST_CASE("sum-coords table over the three wedge corners") {
    const LatticeSpec spec(0.5, 1, 0.0, 1.0);
    const auto t = build_sym(builtin_target("sum-coords"), spec, 2);
    REQUIRE(t.wedge_count() == 3);
    CHECK(t.table()[0] == 0.0);
    CHECK(t.table()[1] == 0.5);
    CHECK(t.table()[2] == 0.5);
    CHECK(t.node_value(WedgeIndex{{1, 1}}) == 1.0);
    CHECK(eval_sym(t, Configuration(2, 1, {0.5, 0.5})) == 1.0);
    CHECK(eval_sym(t, Configuration(2, 1, {0.7, 0.2})) == 0.5);
    CHECK(t.stats().evaluations == 3);
}

TEST_CASE("constant targets are reproduced") {
    const LatticeSpec spec(0.25, 2, 0.0, 1.0);
    const auto t = build_sym(constant(2.5), spec, 3);
    detail::RngStream rng(3);
    for (int i = 0; i < 200; ++i) CHECK(eval_sym(t, random_config(rng, 3, 2)) == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("evaluation at a stored corner returns f(Z)") {
    const LatticeSpec spec(0.25, 2, 0.0, 1.0);
    const auto f = builtin_target("gaussian-pair-sym");
    const auto t = build_sym(f, spec, 2);
    for (const auto& z : enumerate_wedge(spec, 2)) {
        const Configuration corner = wedge_configuration(spec, z);
        CHECK(eval_sym(t, corner) == f(corner));
    }
}

TEST_CASE("indicator evaluation is bit-exactly permutation invariant") {
    const LatticeSpec spec(0.25, 2, 0.0, 1.0);
    const auto t = build_sym(builtin_target("product-smooth-sym"), spec, 3);
    detail::RngStream rng(5);
    for (int i = 0; i < 300; ++i) {
        const auto x = random_config(rng, 3, 2);
        CHECK(eval_sym(t, permute(x, shuffle(rng, 3))) == eval_sym(t, x));
    }
}

TEST_CASE("smooth evaluation is bit-exactly permutation invariant") {
    const LatticeSpec spec(0.25, 1, 0.0, 1.0);
    SymBuildOptions o;
    o.mode = CutoffMode::smooth;
    o.smooth_width = 0.05;
    const auto t = build_sym(builtin_target("gaussian-pair-sym"), spec, 3, o);
    detail::RngStream rng(9);
    for (int i = 0; i < 300; ++i) {
        const auto x = random_config(rng, 3, 1);
        CHECK(eval_sym(t, permute(x, shuffle(rng, 3))) == eval_sym(t, x));
    }
}

TEST_CASE("sum-coords sup error at delta 0.25") {
    const LatticeSpec spec(0.25, 1, 0.0, 1.0);
    const auto f = builtin_target("sum-coords");
    const auto t = build_sym(f, spec, 2);
    detail::RngStream rng(1);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const auto x = random_config(rng, 2, 1);
        worst = std::max(worst, std::fabs(f(x) - eval_sym(t, x)));
    }
    CHECK(worst <= 0.5);
    CHECK(worst >= 0.2);
}

TEST_CASE("center placement halves the sum-coords error") {
    const LatticeSpec spec(0.25, 1, 0.0, 1.0);
    SymBuildOptions o;
    o.node = NodePlacement::center;
    const auto f = builtin_target("sum-coords");
    const auto t = build_sym(f, spec, 2, o);
    detail::RngStream rng(2);
    double worst = 0.0;
    for (int i = 0; i < 5000; ++i) {
        const auto x = random_config(rng, 2, 1);
        worst = std::max(worst, std::fabs(f(x) - eval_sym(t, x)));
    }
    CHECK(worst <= 0.25 + 1e-12);
}

TEST_CASE("feature form agrees with direct evaluation") {
    detail::RngStream rng(4);
    for (std::size_t d = 1; d <= 2; ++d) {
        for (std::size_t n = 2; n <= 3; ++n) {
            const LatticeSpec spec(0.5, d, 0.0, 1.0);
            const auto t = build_sym(builtin_target("gaussian-pair-sym"), spec, n);
            for (int i = 0; i < 50; ++i) {
                const auto x = random_config(rng, n, d);
                CHECK(eval_sym_feature_form(t, x) == doctest::Approx(eval_sym(t, x)).epsilon(1e-9));
            }
        }
    }
    const auto c = build_sym(constant(-1.25), LatticeSpec(0.5, 1, 0.0, 1.0), 3);
    CHECK(eval_sym_feature_form(c, Configuration(3, 1, {0.1, 0.9, 0.4})) == doctest::Approx(-1.25).epsilon(1e-9));
}

TEST_CASE("features vanish outside every box of a wedge element") {
    const LatticeSpec spec(0.5, 1, 0.0, 1.0);
    const auto t = build_sym(builtin_target("sum-coords"), spec, 2);
    const double x = 0.2;
    const auto g = sym_features(t, {&x, 1});
    REQUIRE(g.size() == 12);
    // Z = (1, 1): no slot contains x, every subset gives log 0.
    for (std::size_t s = 8; s < 12; ++s) CHECK(std::isinf(g[s]));
    // Z = (0, 0), S = {0, 1}: two slots contain x.
    CHECK(g[3] == doctest::Approx(std::log(2.0)));
}

TEST_CASE("feature count and accuracy hypothesis") {
    const LatticeSpec spec(0.5, 1, 0.0, 1.0);
    const auto t = build_sym(builtin_target("sum-coords"), spec, 2);
    const auto r = feature_count(t, 0.5, 1.0);
    CHECK(r.m == 12);
    CHECK(r.per_z_features == 4);
    CHECK(feature_total(wedge_size(LatticeSpec(0.25, 2, 0.0, 1.0), 1), 1) == 32);
    CHECK(satisfies_accuracy_hypothesis(0.7, 2, 1));
    CHECK_FALSE(satisfies_accuracy_hypothesis(std::sqrt(2.0) / 2.0 + 1e-9, 2, 1));
    CHECK_THROWS_AS(feature_count(t, 1.0, 1.0), ArgumentError);
    // 2^N (Nd)^{Nd/2} / (eps^{Nd} N!) at N = 2, d = 1, eps = 0.5: 4 * 2 / (0.25 * 2) = 16.
    CHECK(r.theoretical_bound == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(r.required_delta == doctest::Approx(0.5 / std::sqrt(2.0)));
    CHECK_FALSE(r.delta_sufficient);
}

TEST_CASE("error budget and its inverse") {
    CHECK(error_budget(0.1, 3, 2, 1.0).bound == doctest::Approx(0.1 * std::sqrt(6.0)).epsilon(1e-15));
    CHECK(error_budget(0.1, 3, 2, 0.0).bound == 0.0);
    const double eps = 0.37;
    CHECK(error_budget(delta_for_epsilon(eps, 3, 2, 1.7), 3, 2, 1.7).bound == doctest::Approx(eps).epsilon(1e-15));
    CHECK(std::isinf(delta_for_epsilon(eps, 3, 2, 0.0)));
}

TEST_CASE("build guards") {
    const LatticeSpec spec(0.5, 1, 0.0, 1.0);
    CHECK_THROWS_AS(build_sym(builtin_target("vandermonde-gauss-antisym"), spec, 2), ArgumentError);
    const TargetFunction bad("nan", [](const Configuration&) { return std::nan(""); }, Symmetry::symmetric);
    CHECK_THROWS_AS(build_sym(bad, spec, 2), BuildError);
    SymBuildOptions capped;
    capped.cap = 2;
    CHECK_THROWS_AS(build_sym(constant(1), spec, 2, capped), CapacityError);
    const auto coarse = build_sym(constant(1), spec, 4);
    CHECK(coarse.stats().coarse_lattice);
    CHECK_FALSE(build_sym(constant(1), LatticeSpec(0.1, 1, 0.0, 1.0), 2).stats().coarse_lattice);
}

TEST_CASE("threaded build matches serial build") {
    const LatticeSpec spec(0.125, 2, 0.0, 1.0);
    SymBuildOptions o;
    o.threads = 3;
    const auto f = builtin_target("gaussian-pair-sym");
    const auto a = build_sym(f, spec, 2);
    const auto b = build_sym(f, spec, 2, o);
    CHECK(std::equal(a.table().begin(), a.table().end(), b.table().begin(), b.table().end()));
}
