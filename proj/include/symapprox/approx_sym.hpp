// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file approx_sym.hpp
 * @brief Tabulated approximation of a totally symmetric function.
 *
 * The approximant is piecewise constant over the boxes B^{Z;delta} indexed by
 * the wedge: f(X) ~ sum_Z f(Z) 1_{B^Z}(X). Writing the box indicator as
 * perm([f^Z_i(x_j)]) / C_Z and expanding the permanent with Ryser's formula
 * gives the form phi(sum_j g(x_j)) with 2^N features per wedge element; both
 * evaluation routes are provided. The table stores the phi weights f(Z) / C_Z.
 *
 * In smooth mode the per-point box indicators are replaced by tensor-product
 * smoothstep cutoffs, normalized so the weights over neighboring cells sum
 * to one.
 */

#pragma once

#include "symapprox/core.hpp"
#include "symapprox/lattice.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace symapprox {

enum class CutoffMode { indicator, smooth };

/// Where f is sampled inside each cell: the lower corner (default) or the center.
enum class NodePlacement { corner, center };

struct SymBuildOptions {
    CutoffMode mode = CutoffMode::indicator;
    double smooth_width = 0.0;
    NodePlacement node = NodePlacement::corner;
    std::uint64_t cap = kDefaultWedgeCap;
    unsigned threads = 1;
};

struct BuildStats {
    std::uint64_t evaluations = 0;
    std::uint64_t wedge_size = 0;
    double build_seconds = 0.0;
    /// delta / (hi - lo) > N^{-1/d}: more points than the lattice resolves.
    bool coarse_lattice = false;
};

class SymmetricTabulator {
public:
    /// `table[rank(Z)] = f(Z) / C_Z`, one entry per wedge element.
    SymmetricTabulator(LatticeSpec spec, std::size_t num_points, std::vector<double> table,
                       CutoffMode mode = CutoffMode::indicator, double smooth_width = 0.0,
                       NodePlacement node = NodePlacement::corner, BuildStats stats = {});

    const LatticeSpec& spec() const noexcept { return spec_; }
    std::size_t num_points() const noexcept { return num_points_; }
    CutoffMode mode() const noexcept { return mode_; }
    double smooth_width() const noexcept { return smooth_width_; }
    NodePlacement node() const noexcept { return node_; }
    const BuildStats& stats() const noexcept { return stats_; }

    std::uint64_t wedge_count() const noexcept { return table_.size(); }
    std::span<const double> table() const noexcept { return table_; }

    /// f(Z) / C_Z.
    double stored(const WedgeIndex& z) const;
    /// f(Z), recovered as stored * C_Z.
    double node_value(const WedgeIndex& z) const;

private:
    LatticeSpec spec_;
    std::size_t num_points_;
    CutoffMode mode_;
    double smooth_width_;
    NodePlacement node_;
    std::vector<double> table_;
    BuildStats stats_;
};

/// Tabulates f over the wedge. Throws CapacityError above `options.cap` and
/// BuildError when f is non-finite at a node.
SymmetricTabulator build_sym(const TargetFunction& f, const LatticeSpec& spec, std::size_t num_points,
                             const SymBuildOptions& options = {});

/// Canonicalizes X before any arithmetic, so the result is bit-for-bit
/// invariant under permutations of X.
double eval_sym(const SymmetricTabulator& t, const Configuration& x);

inline constexpr std::uint64_t kFeatureMaterializationLimit = 1'000'000;

/// g(x) for one point: component (Z, S) = log sum_{i in S} 1[x in box(z_i)],
/// ordered by wedge rank then subset bitmask; -inf when the sum is zero.
std::vector<double> sym_features(const SymmetricTabulator& t, std::span<const double> x);

/// phi(Y) = sum_Z (-1)^N f(Z)/C_Z sum_S (-1)^{|S|} exp(Y_{Z,S}).
double sym_phi(const SymmetricTabulator& t, std::span<const double> y);

/// phi(sum_j g(x_j)) with point features summed in input order. Indicator
/// mode only; wedge_count * 2^N must not exceed 10^6.
double eval_sym_feature_form(const SymmetricTabulator& t, const Configuration& x);

struct FeatureCountReport {
    std::uint64_t wedge_count = 0;
    std::uint64_t per_z_features = 0;
    /// wedge_count * 2^N.
    std::uint64_t m = 0;
    /// 2^N (Nd)^{Nd/2} / (eps^{Nd} N!), without the hidden constant.
    double theoretical_bound = 0.0;
    double epsilon = 0.0;
    double gradient_bound = 0.0;
    /// Largest delta with delta * sqrt(Nd) * L <= eps.
    double required_delta = 0.0;
    bool delta_sufficient = false;
    /// Informational: m is larger than the constant-free asymptotic expression.
    bool exceeds_asymptotic = false;
};

/// True when 0 < eps < sqrt(Nd) N^{-1/d}.
bool satisfies_accuracy_hypothesis(double epsilon, std::size_t num_points, std::size_t d);

/// 2^N (Nd)^{Nd/2} / (eps^{Nd} N!), computed in log space.
double theoretical_feature_bound(double epsilon, std::size_t num_points, std::size_t d);

/// Throws ArgumentError when the accuracy hypothesis fails.
FeatureCountReport feature_count(std::uint64_t wedge_count, std::size_t num_points, std::size_t d, double delta,
                                 double epsilon, double gradient_bound);
FeatureCountReport feature_count(const SymmetricTabulator& t, double epsilon, double gradient_bound);

/// wedge_count * 2^N; CapacityError on overflow.
std::uint64_t feature_total(std::uint64_t wedge_count, std::size_t num_points);

struct ErrorBudget {
    double delta;
    std::size_t num_points;
    std::size_t d;
    double gradient_bound;
    /// delta * sqrt(N d) * L.
    double bound;
};

ErrorBudget error_budget(double delta, std::size_t num_points, std::size_t d, double gradient_bound);

/// eps / (sqrt(N d) L); +inf when L == 0.
double delta_for_epsilon(double epsilon, std::size_t num_points, std::size_t d, double gradient_bound);

/// Sorts points lexicographically by coordinates. Returns the permutation
/// `order` with canonical.point(k) == x.point(order(k)).
Permutation canonical_order(const Configuration& x);

} // namespace symapprox
