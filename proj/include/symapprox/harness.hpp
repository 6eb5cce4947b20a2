// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file harness.hpp
 * @brief Verification engine: seeded sampling, sup-error estimates,
 * finite-difference gradient bounds, invariance suites and convergence sweeps.
 *
 * Per-sample work runs in parallel; reductions run in sample order so every
 * result is independent of the worker count.
 */

#pragma once

#include "symapprox/approximator.hpp"
#include "symapprox/core.hpp"
#include "symapprox/detail/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace symapprox {

using Evaluator = std::function<double(const Configuration&)>;

struct SampleSet {
    DomainSpec domain;
    std::uint64_t seed = 0;
    std::vector<Configuration> configurations;

    std::size_t count() const noexcept { return configurations.size(); }
};

/// Coordinate alpha of point i in sample s is uniform_at((s N + i) d + alpha)
/// of a counter-based generator keyed by `seed`.
SampleSet sample_configurations(const DomainSpec& domain, std::size_t count, std::uint64_t seed);

/// Default finite-difference step, 1e-4 (hi - lo).
double default_fd_step(const DomainSpec& domain);

/// Max over samples of the Euclidean norm of the central-difference gradient.
/// Coordinates are clipped to [lo + h, hi - h] first.
double gradient_bound_estimate(const Evaluator& f, const SampleSet& samples, double h, unsigned threads = 1);

struct SupError {
    double value = 0.0;
    /// First sample attaining the maximum.
    Configuration argmax;
};

/// Throws EvaluationError when a deviation is not finite.
SupError sup_error(const Evaluator& exact, const Evaluator& approx, const SampleSet& samples, unsigned threads = 1);

enum class InvarianceMode { sym, antisym };

/// Fisher-Yates shuffle driven by `rng`.
Permutation random_permutation(std::size_t n, detail::RngStream& rng);

/// Max over samples and `n_perms` seeded permutations per sample of
/// |f(sigma X) - f(X)| or |f(sigma X) - parity(sigma) f(X)|.
double invariance_suite(const Evaluator& f, const SampleSet& samples, std::size_t n_perms, InvarianceMode mode,
                        std::uint64_t seed, unsigned threads = 1);

struct SweepRow {
    double delta = 0.0;
    double sup_error = 0.0;
    double bound = 0.0;
    std::uint64_t wedge_count = 0;
    std::uint64_t m = 0;
    double wall_seconds = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    /// Least-squares slope of log(error) against log(delta); absent when
    /// some error is at most 1e-12.
    std::optional<double> slope;
};

/// One approximator per delta over `domain`, errors measured on `samples`,
/// bounds delta sqrt(Nd) L. Requires at least three strictly descending deltas.
SweepResult convergence_sweep(const TargetFunction& f, ApproxKind kind, const DomainSpec& domain,
                              const BuildParams& params, const std::vector<double>& deltas,
                              const SampleSet& samples, double gradient_bound);

/// d = 1 only. Keeps samples whose pairwise gaps are all >= min_gap and
/// returns the max over seeded permutations of |U(sigma X) - U(X)| for
/// U = f / prod_{i<j} (x_i - x_j). Throws ArgumentError if nothing survives.
double cauchy_factor_check(const Evaluator& f, const SampleSet& samples, double min_gap, std::size_t n_perms,
                           std::uint64_t seed);

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
};

struct VerificationReport {
    double sup_error = 0.0;
    Configuration argmax_configuration;
    double bound = 0.0;
    bool bound_satisfied = false;
    double gradient_bound = 0.0;
    double invariance_max_residual = 0.0;
    std::optional<double> cauchy_residual;
    std::optional<double> slope;
    double wall_time = 0.0;
    std::vector<CheckResult> checks;

    bool passed() const noexcept;
};

/// sup_error <= bound + 1e-12.
bool within_bound(double sup_error, double bound) noexcept;

} // namespace symapprox
