// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file lattice.hpp
 * @brief Uniform lattice over [lo, hi]^d, its N-fold wedge, and cell location.
 *
 * Lattice points are identified by a linear id in [0, n^d) whose numeric order
 * equals the lexicographic order of the multi-index (first coordinate most
 * significant). A wedge element is a non-decreasing N-tuple of ids; wedge
 * elements are ranked in tuple-lexicographic order.
 *
 * Cells are half-open [z, z + delta) except the last cell per dimension,
 * which is closed, so every in-domain point lies in exactly one cell.
 */

#pragma once

#include "symapprox/core.hpp"

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <span>
#include <vector>

namespace symapprox {

inline constexpr std::uint64_t kDefaultWedgeCap = 10'000'000;

/// Multi-index of a lattice point.
struct LatticePoint {
    std::vector<std::int64_t> index;

    bool operator==(const LatticePoint&) const = default;
};

class LatticeSpec {
public:
    /// n = ceil((hi - lo) / delta). Throws ArgumentError on bad input and
    /// CapacityError when n^d does not fit in 64 bits.
    LatticeSpec(double delta, std::size_t d, double lo, double hi);

    static LatticeSpec for_domain(const DomainSpec& domain, double delta) {
        return LatticeSpec(delta, domain.d, domain.lo, domain.hi);
    }

    double delta() const noexcept { return delta_; }
    std::size_t dim() const noexcept { return d_; }
    std::int64_t cells_per_dim() const noexcept { return n_; }
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

    /// n^d.
    std::uint64_t num_points() const noexcept { return count_; }

    std::uint64_t id_of(const LatticePoint& z) const;
    LatticePoint point_of(std::uint64_t id) const;

    /// Component alpha of the multi-index of `id`.
    std::int64_t component(std::uint64_t id, std::size_t alpha) const noexcept;

    /// Real coordinate lo + delta * k.
    double position(std::int64_t k) const noexcept { return lo_ + delta_ * static_cast<double>(k); }

    bool operator==(const LatticeSpec&) const = default;

private:
    double delta_;
    std::size_t d_;
    std::int64_t n_;
    double lo_;
    double hi_;
    std::uint64_t count_;
};

/// Non-decreasing N-tuple of lattice point ids.
struct WedgeIndex {
    std::vector<std::uint64_t> ids;

    std::size_t size() const noexcept { return ids.size(); }
    bool is_sorted() const noexcept;
    /// True when no lattice point repeats.
    bool distinct() const noexcept;

    bool operator==(const WedgeIndex&) const = default;
};

/// Dictionary order on multi-indices: -1, 0 or +1.
int lex_compare(const LatticePoint& a, const LatticePoint& b);

/// Cell index per dimension, min(floor((x - lo) / delta), n - 1).
/// Throws DomainError outside [lo, hi]^d.
LatticePoint cell_of(const LatticeSpec& spec, std::span<const double> x);
std::uint64_t cell_id(const LatticeSpec& spec, std::span<const double> x);

/// C(n^d + N - 1, N). Throws CapacityError on 64-bit overflow.
std::uint64_t wedge_size(const LatticeSpec& spec, std::size_t num_points);

/// C(n^d, N): wedge elements with pairwise distinct points.
std::uint64_t distinct_wedge_size(const LatticeSpec& spec, std::size_t num_points);

/// Position of `z` in the enumeration order of the wedge.
std::uint64_t wedge_rank(const LatticeSpec& spec, const WedgeIndex& z);
WedgeIndex wedge_unrank(const LatticeSpec& spec, std::size_t num_points, std::uint64_t rank);

/// Position of a distinct `z` among distinct wedge elements.
std::uint64_t distinct_wedge_rank(const LatticeSpec& spec, const WedgeIndex& z);
WedgeIndex distinct_wedge_unrank(const LatticeSpec& spec, std::size_t num_points, std::uint64_t rank);

/// Steps to the next wedge element in enumeration order; false after the last.
bool next_wedge(std::uint64_t lattice_points, WedgeIndex& z) noexcept;
bool next_distinct_wedge(std::uint64_t lattice_points, WedgeIndex& z) noexcept;

/// Forward range over every wedge element, in rank order.
class WedgeRange {
public:
    class iterator {
    public:
        using value_type = WedgeIndex;
        using difference_type = std::ptrdiff_t;
        using reference = const WedgeIndex&;
        using iterator_category = std::input_iterator_tag;

        iterator() = default;
        iterator(std::uint64_t lattice_points, WedgeIndex start) : points_(lattice_points), z_(std::move(start)), done_(false) {}

        reference operator*() const noexcept { return z_; }
        const WedgeIndex* operator->() const noexcept { return &z_; }
        iterator& operator++() noexcept {
            done_ = !next_wedge(points_, z_);
            return *this;
        }
        void operator++(int) noexcept { ++*this; }
        bool operator==(std::default_sentinel_t) const noexcept { return done_; }

    private:
        std::uint64_t points_ = 0;
        WedgeIndex z_;
        bool done_ = true;
    };

    WedgeRange(std::uint64_t lattice_points, std::size_t num_points, std::uint64_t count)
        : points_(lattice_points), num_points_(num_points), count_(count) {}

    iterator begin() const { return iterator(points_, WedgeIndex{std::vector<std::uint64_t>(num_points_, 0)}); }
    std::default_sentinel_t end() const noexcept { return {}; }
    std::uint64_t size() const noexcept { return count_; }

private:
    std::uint64_t points_;
    std::size_t num_points_;
    std::uint64_t count_;
};

/// Every non-decreasing N-tuple exactly once, in lexicographic order.
/// Throws CapacityError naming the required cap when the wedge is larger than `cap`.
WedgeRange enumerate_wedge(const LatticeSpec& spec, std::size_t num_points, std::uint64_t cap = kDefaultWedgeCap);

/// Product of factorials of the multiplicities of repeated points.
std::uint64_t repetition_constant(const WedgeIndex& z);

/// Real configuration of the wedge element: point k sits at
/// lo + delta * (index + offset), offset 0 for corners and 0.5 for centers.
Configuration wedge_configuration(const LatticeSpec& spec, const WedgeIndex& z, double offset = 0.0);

/// Result of locating a configuration on the lattice.
struct CellAssignment {
    WedgeIndex wedge;
    /// Input slot i sits in wedge slot sigma(i).
    Permutation sigma;
    std::uint64_t repetition;
    int parity;

    /// order[k] = input slot assigned to wedge slot k (sigma inverse).
    std::vector<std::size_t> order() const;
};

/// Sorts the cells of the points with a stable sort, so tied slots keep input order.
CellAssignment locate(const LatticeSpec& spec, const Configuration& x);

/// C^2 quintic smoothstep 6t^5 - 15t^4 + 10t^3 clamped to [0, 1].
double smoothstep(double t) noexcept;

/// One-dimensional cutoff of cell k: 1 on [z + w, z + delta - w], 0 outside
/// [z - w, z + delta + w], smoothstep transitions of width 2w centered on the faces.
double cutoff_profile(const LatticeSpec& spec, std::int64_t k, double x, double w) noexcept;

/// Tensor product of cutoff profiles over dimensions. Requires 0 < w <= delta / 2.
double smooth_cutoff(const LatticeSpec& spec, const LatticePoint& z, std::span<const double> x, double w);

/// Lattice ids of cells whose cutoff is nonzero at x, with their weights,
/// in increasing id order. At most 3^d entries.
struct WeightedCell {
    std::uint64_t id;
    double weight;
};
std::vector<WeightedCell> cutoff_neighbors(const LatticeSpec& spec, std::span<const double> x, double w);

} // namespace symapprox
