// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

#include "symapprox/errors.hpp"
#include "symapprox/harness.hpp"

#include <doctest.h>

#include <cmath>

using namespace symapprox;

namespace {

double vandermonde(const Configuration& x) {
    double v = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) v *= x.coord(i, 0) - x.coord(j, 0);
    }
    return v;
}

} // namespace

TEST_CASE("sampling is deterministic and uniform") {
    const DomainSpec domain{2, 3, -1.0, 2.0};
    const auto a = sample_configurations(domain, 50, 99);
    const auto b = sample_configurations(domain, 50, 99);
    CHECK(a.configurations == b.configurations);
    CHECK(sample_configurations(domain, 50, 100).configurations != a.configurations);
    CHECK_THROWS_AS(sample_configurations(domain, 0, 1), ArgumentError);

    const DomainSpec unit{1, 1, 0.0, 1.0};
    const auto big = sample_configurations(unit, 100000, 5);
    double sum = 0.0;
    for (const auto& x : big.configurations) {
        CHECK(x.in_domain(unit));
        sum += x.coord(0, 0);
    }
    const double mean = sum / 100000.0;
    const double standard_error = std::sqrt(1.0 / 12.0 / 100000.0);
    CHECK(std::fabs(mean - 0.5) <= 3 * standard_error);
}

TEST_CASE("gradient bound estimates") {
    const DomainSpec domain{2, 3, 0.0, 1.0};
    const auto s = sample_configurations(domain, 200, 1);
    const double h = default_fd_step(domain);
    CHECK(std::fabs(gradient_bound_estimate(builtin_target("sum-coords").evaluator(), s, h) - std::sqrt(6.0)) <= 1e-8);
    CHECK(gradient_bound_estimate([](const Configuration&) { return 4.0; }, s, h) <= 1e-8);
    for (const char* name : {"gaussian-pair-sym", "product-smooth-sym", "vandermonde-gauss-antisym"}) {
        const auto f = builtin_target(name).evaluator();
        CHECK(std::fabs(gradient_bound_estimate(f, s, 1e-4) - gradient_bound_estimate(f, s, 5e-5)) < 1e-6);
    }
    const Evaluator blowup = [](const Configuration& x) { return 1.0 / (x.coord(0, 0) - x.coord(0, 0)); };
    CHECK_THROWS_AS(gradient_bound_estimate(blowup, s, h), EvaluationError);
    CHECK_THROWS_AS(gradient_bound_estimate(blowup, s, 0.0), ArgumentError);
}

TEST_CASE("sup error") {
    const DomainSpec domain{1, 2, 0.0, 1.0};
    const auto s = sample_configurations(domain, 10000, 2);
    const auto f = builtin_target("sum-coords");
    CHECK(sup_error(f.evaluator(), f.evaluator(), s).value == 0.0);
    const auto model = build_approximator(ApproxKind::sym, f, LatticeSpec::for_domain(domain, 0.25), 2);
    const auto r = sup_error(f.evaluator(), [&](const Configuration& x) { return model(x); }, s, 2);
    CHECK(r.value <= 0.5);
    CHECK(r.value >= 0.2);
    CHECK(std::fabs(f(r.argmax) - model(r.argmax)) == r.value);
    const auto serial = sup_error(f.evaluator(), [&](const Configuration& x) { return model(x); }, s, 1);
    CHECK(serial.argmax == r.argmax);

    const TargetFunction c("constant", [](const Configuration&) { return 0.3; }, Symmetry::symmetric);
    const auto cm = build_approximator(ApproxKind::sym, c, LatticeSpec::for_domain(domain, 0.25), 2);
    CHECK(sup_error(c.evaluator(), [&](const Configuration& x) { return cm(x); }, s).value <= 1e-12);
}

TEST_CASE("invariance suite") {
    const DomainSpec domain{2, 3, 0.0, 1.0};
    const auto s = sample_configurations(domain, 300, 3);
    const LatticeSpec spec = LatticeSpec::for_domain(domain, 0.25);
    const auto sym = build_approximator(ApproxKind::sym, builtin_target("gaussian-pair-sym"), spec, 3);
    const auto anti = build_approximator(ApproxKind::antisym_linear, builtin_target("vandermonde-gauss-antisym"), spec, 3);
    const Evaluator es = [&](const Configuration& x) { return sym(x); };
    const Evaluator ea = [&](const Configuration& x) { return anti(x); };
    CHECK(invariance_suite(es, s, 5, InvarianceMode::sym, 1) == 0.0);
    CHECK(invariance_suite(ea, s, 5, InvarianceMode::antisym, 1) == 0.0);
    CHECK(invariance_suite(ea, s, 5, InvarianceMode::antisym, 1, 3) == 0.0);
    const Evaluator broken = [&](const Configuration& x) { return sym(x) + x.coord(0, 0); };
    CHECK(invariance_suite(broken, s, 5, InvarianceMode::sym, 1) > 0.0);
    CHECK_THROWS_AS(invariance_suite(es, s, 0, InvarianceMode::sym, 1), ArgumentError);
}

TEST_CASE("random permutations are seeded") {
    detail::RngStream a(4), b(4);
    for (int i = 0; i < 20; ++i) CHECK(random_permutation(6, a) == random_permutation(6, b));
}

TEST_CASE("convergence sweep") {
    const DomainSpec domain{1, 2, 0.0, 1.0};
    const auto s = sample_configurations(domain, 10000, 4);
    const auto f = builtin_target("sum-coords");
    const auto r = convergence_sweep(f, ApproxKind::sym, domain, {}, {0.5, 0.25, 0.125}, s, std::sqrt(2.0));
    REQUIRE(r.rows.size() == 3);
    REQUIRE(r.slope);
    CHECK(*r.slope >= 0.8);
    CHECK(*r.slope <= 1.2);
    for (std::size_t k = 1; k < 3; ++k) CHECK(r.rows[k].sup_error <= r.rows[k - 1].sup_error + 1e-12);
    for (const auto& row : r.rows) CHECK(row.sup_error <= row.bound + 1e-12);
    CHECK(r.rows[0].m == 12);
    CHECK(r.rows[1].m == 40);
    CHECK(r.rows[2].m == 144);

    const TargetFunction c("constant", [](const Configuration&) { return 1.5; }, Symmetry::symmetric);
    const auto flat = convergence_sweep(c, ApproxKind::sym, domain, {}, {0.5, 0.25, 0.125}, s, 0.0);
    CHECK_FALSE(flat.slope);
    for (const auto& row : flat.rows) CHECK(row.sup_error <= 1e-12);

    CHECK_THROWS_AS(convergence_sweep(f, ApproxKind::sym, domain, {}, {0.5, 0.25}, s, 1.0), ArgumentError);
    CHECK_THROWS_AS(convergence_sweep(f, ApproxKind::sym, domain, {}, {0.25, 0.5, 0.125}, s, 1.0), ArgumentError);
    BuildParams tight;
    tight.cap = 20;
    try {
        convergence_sweep(f, ApproxKind::sym, domain, tight, {0.5, 0.25, 0.125}, s, 1.0);
        FAIL("expected CapacityError");
    } catch (const CapacityError& e) {
        CHECK(std::string(e.what()).find("delta = 0.125") != std::string::npos);
    }
}

TEST_CASE("Cauchy factorization check") {
    const DomainSpec domain{1, 3, 0.0, 1.0};
    const auto s = sample_configurations(domain, 2000, 5);
    CHECK(cauchy_factor_check(vandermonde, s, 0.05, 4, 1) <= 1e-12);
    CHECK(cauchy_factor_check(builtin_target("vandermonde-sum-antisym").evaluator(), s, 0.05, 4, 1) <= 1e-9);
    CHECK(cauchy_factor_check(builtin_target("vandermonde-gauss-antisym").evaluator(), s, 0.05, 4, 1) <= 1e-9);
    const Evaluator mutant = [](const Configuration& x) { return vandermonde(x) * (1.0 + x.coord(0, 0)); };
    CHECK(cauchy_factor_check(mutant, s, 0.05, 4, 1) > 1e-3);
    CHECK_THROWS_AS(cauchy_factor_check(vandermonde, s, 2.0, 4, 1), ArgumentError);
    CHECK_THROWS_AS(cauchy_factor_check(vandermonde, sample_configurations({2, 2, 0.0, 1.0}, 10, 1), 0.01, 4, 1),
                    ArgumentError);
}
