// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file approx_antisym.hpp
 * @brief Tabulated approximation of a totally anti-symmetric function.
 *
 *   f(X) ~ sum_Z U^Z(X) psi^Z(X),   psi^Z(X) = prod_{i<j} (y^Z_i(X) - y^Z_j(X)),
 *
 * where Y^Z is permutation equivariant and U^Z = f(Z) / psi^Z(Z) * 1_{B^Z}
 * is symmetric. Only wedge elements with pairwise distinct points carry a
 * term, since f vanishes whenever two points coincide.
 *
 * Sorting construction: y^Z_i(X) is the wedge slot (1-based) that point i
 * occupies, so psi^Z(X) = (-1)^sigma prod_{i<j} (i - j).
 * Linear construction: y^Z_i(X) = a^Z . x_i for a unit direction a^Z with no
 * pair z_i - z_j nearly orthogonal to it. Only this one admits smooth cutoffs.
 */

#pragma once

#include "symapprox/core.hpp"
#include "symapprox/lattice.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace symapprox {

enum class AntisymConstruction { sorting, linear };

inline constexpr std::size_t kDirectionMaxDraws = 1000;

struct AntisymBuildOptions {
    AntisymConstruction construction = AntisymConstruction::sorting;
    /// Minimum |a . (z_i - z_j)| / |z_i - z_j| accepted for a direction.
    double tau = 1e-3;
    std::uint64_t seed = 0;
    /// Smooth cutoff width; linear construction only.
    std::optional<double> smooth_width;
    std::uint64_t cap = kDefaultWedgeCap;
    unsigned threads = 1;
};

class AntisymTabulator {
public:
    /// `coefficients[distinct_rank(Z)] = f(Z) / psi^Z(Z)`; for the linear
    /// construction `directions` holds d components per entry.
    AntisymTabulator(LatticeSpec spec, std::size_t num_points, AntisymConstruction construction,
                     std::vector<double> coefficients, std::vector<double> directions = {}, double tau = 1e-3,
                     std::uint64_t seed = 0, std::optional<double> smooth_width = std::nullopt,
                     double build_seconds = 0.0);

    const LatticeSpec& spec() const noexcept { return spec_; }
    std::size_t num_points() const noexcept { return num_points_; }
    AntisymConstruction construction() const noexcept { return construction_; }
    double tau() const noexcept { return tau_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::optional<double> smooth_width() const noexcept { return smooth_width_; }
    double build_seconds() const noexcept { return build_seconds_; }

    /// Entries stored: one per wedge element with distinct points.
    std::uint64_t entry_count() const noexcept { return coefficients_.size(); }
    /// Size of the full wedge the table is indexed against.
    std::uint64_t wedge_count() const;

    std::span<const double> coefficients() const noexcept { return coefficients_; }
    std::span<const double> directions() const noexcept { return directions_; }

    double coefficient(const WedgeIndex& z) const;
    /// a^Z; linear construction only.
    std::span<const double> direction(const WedgeIndex& z) const;
    std::span<const double> direction_at(std::uint64_t rank) const noexcept {
        return {directions_.data() + rank * spec_.dim(), spec_.dim()};
    }

private:
    LatticeSpec spec_;
    std::size_t num_points_;
    AntisymConstruction construction_;
    std::vector<double> coefficients_;
    std::vector<double> directions_;
    double tau_;
    std::uint64_t seed_;
    std::optional<double> smooth_width_;
    double build_seconds_;
};

/// prod_{i<j} (ys[i] - ys[j]), factors multiplied in (i, j) lexicographic order.
double vandermonde_product(std::span<const double> ys);

/// prod_{i<j} (i - j) for i, j = 1..N.
double sorting_denominator(std::size_t num_points);

/// prod_{i<j} a . (x_i - x_j), in the argument order of x.
double linear_vandermonde(std::span<const double> direction, const Configuration& x);

/// min_{i<j} |a . (z_i - z_j)| / |z_i - z_j| >= tau.
bool direction_accepts(const LatticeSpec& spec, const WedgeIndex& z, std::span<const double> a, double tau);

/// Unit vector drawn uniformly from the sphere by seeded rejection sampling;
/// the stream seed is FNV-1a over (seed, multi-index of Z). d = 1 gives (1).
/// Throws BuildError after 1000 rejected draws.
std::vector<double> choose_direction(const LatticeSpec& spec, const WedgeIndex& z, double tau, std::uint64_t seed);

AntisymTabulator build_antisym(const TargetFunction& f, const LatticeSpec& spec, std::size_t num_points,
                               const AntisymBuildOptions& options = {});

/// Evaluation always proceeds from a canonical ordering of X, so
/// eval(sigma X) == parity(sigma) * eval(X) bit for bit.
double eval_antisym(const AntisymTabulator& t, const Configuration& x);

/// ys[i] = 1-based wedge slot of point i. X must lie in B^{Z;delta} and Z
/// must be distinct, otherwise ArgumentError.
std::vector<double> equivariant_sort_map(const LatticeSpec& spec, const WedgeIndex& z, const Configuration& x);

} // namespace symapprox
