// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

#include "symapprox/lattice.hpp"

#include "symapprox/detail/numeric.hpp"
#include "symapprox/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace symapprox {

namespace {

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    auto v = detail::checked_binomial(n, k);
    if (!v) throw CapacityError("binomial coefficient overflows 64 bits", 0);
    return *v;
}

} // namespace

LatticeSpec::LatticeSpec(double delta, std::size_t d, double lo, double hi)
    : delta_(delta), d_(d), n_(0), lo_(lo), hi_(hi), count_(0) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw ArgumentError("lattice spacing delta must be positive and finite");
    if (d == 0) throw ArgumentError("lattice dimension must be positive");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw ArgumentError("lattice requires finite lo < hi");
    const double ratio = (hi - lo) / delta;
    // Absorb rounding in ratios such as 0.3 / 0.1.
    const double cells = std::ceil(ratio * (1.0 - 1e-12));
    if (!(cells < 9.0e18)) throw CapacityError("lattice has too many cells per dimension", 0);
    n_ = std::max<std::int64_t>(1, static_cast<std::int64_t>(cells));
    auto count = detail::checked_pow(static_cast<std::uint64_t>(n_), d);
    if (!count) throw CapacityError("lattice size n^d overflows 64 bits", 0);
    count_ = *count;
}

std::uint64_t LatticeSpec::id_of(const LatticePoint& z) const {
    if (z.index.size() != d_) throw ArgumentError("lattice point dimension mismatch");
    std::uint64_t id = 0;
    for (std::int64_t k : z.index) {
        if (k < 0 || k >= n_) throw ArgumentError("lattice index out of range");
        id = id * static_cast<std::uint64_t>(n_) + static_cast<std::uint64_t>(k);
    }
    return id;
}

LatticePoint LatticeSpec::point_of(std::uint64_t id) const {
    LatticePoint z;
    z.index.resize(d_);
    for (std::size_t a = d_; a-- > 0;) {
        z.index[a] = static_cast<std::int64_t>(id % static_cast<std::uint64_t>(n_));
        id /= static_cast<std::uint64_t>(n_);
    }
    return z;
}

std::int64_t LatticeSpec::component(std::uint64_t id, std::size_t alpha) const noexcept {
    for (std::size_t a = d_ - 1; a > alpha; --a) id /= static_cast<std::uint64_t>(n_);
    return static_cast<std::int64_t>(id % static_cast<std::uint64_t>(n_));
}

bool WedgeIndex::is_sorted() const noexcept { return std::is_sorted(ids.begin(), ids.end()); }

bool WedgeIndex::distinct() const noexcept {
    for (std::size_t i = 1; i < ids.size(); ++i) {
        if (ids[i] == ids[i - 1]) return false;
    }
    return true;
}

int lex_compare(const LatticePoint& a, const LatticePoint& b) {
    if (a.index.size() != b.index.size()) throw ArgumentError("lex_compare on lattice points of different dimension");
    for (std::size_t k = 0; k < a.index.size(); ++k) {
        if (a.index[k] < b.index[k]) return -1;
        if (a.index[k] > b.index[k]) return 1;
    }
    return 0;
}

LatticePoint cell_of(const LatticeSpec& spec, std::span<const double> x) {
    return spec.point_of(cell_id(spec, x));
}

std::uint64_t cell_id(const LatticeSpec& spec, std::span<const double> x) {
    if (x.size() != spec.dim()) throw ArgumentError("point dimension does not match the lattice");
    const auto n = static_cast<std::uint64_t>(spec.cells_per_dim());
    std::uint64_t id = 0;
    for (double c : x) {
        if (!(c >= spec.lo() && c <= spec.hi())) {
            throw DomainError("coordinate " + detail::decimal17(c) + " outside [" + detail::decimal17(spec.lo()) + ", " +
                              detail::decimal17(spec.hi()) + "]");
        }
        const double t = std::floor((c - spec.lo()) / spec.delta());
        const std::uint64_t k = std::min<std::uint64_t>(static_cast<std::uint64_t>(std::max(t, 0.0)), n - 1);
        id = id * n + k;
    }
    return id;
}

std::uint64_t wedge_size(const LatticeSpec& spec, std::size_t num_points) {
    if (num_points == 0) throw ArgumentError("wedge needs N >= 1");
    auto v = detail::checked_binomial(spec.num_points() + num_points - 1, num_points);
    if (!v) throw CapacityError("wedge size overflows 64 bits", 0);
    return *v;
}

std::uint64_t distinct_wedge_size(const LatticeSpec& spec, std::size_t num_points) {
    if (num_points == 0) throw ArgumentError("wedge needs N >= 1");
    auto v = detail::checked_binomial(spec.num_points(), num_points);
    if (!v) throw CapacityError("distinct wedge size overflows 64 bits", 0);
    return *v;
}

std::uint64_t wedge_rank(const LatticeSpec& spec, const WedgeIndex& z) {
    const std::uint64_t p = spec.num_points();
    const std::size_t n = z.size();
    std::uint64_t rank = 0;
    std::uint64_t lower = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t c = z.ids[k];
        if (c < lower || c >= p) throw ArgumentError("wedge index is not a non-decreasing tuple of lattice ids");
        const std::uint64_t r = n - k - 1;
        // Tuples whose slot k lies in [lower, c), by the hockey-stick identity.
        rank += binom(p - lower + r, r + 1) - binom(p - c + r, r + 1);
        lower = c;
    }
    return rank;
}

WedgeIndex wedge_unrank(const LatticeSpec& spec, std::size_t num_points, std::uint64_t rank) {
    const std::uint64_t p = spec.num_points();
    if (rank >= wedge_size(spec, num_points)) throw ArgumentError("wedge rank out of range");
    WedgeIndex z{std::vector<std::uint64_t>(num_points)};
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < num_points; ++k) {
        const std::uint64_t r = num_points - k - 1;
        for (;;) {
            const std::uint64_t block = binom(p - v + r - 1, r);
            if (rank < block) break;
            rank -= block;
            ++v;
        }
        z.ids[k] = v;
    }
    return z;
}

std::uint64_t distinct_wedge_rank(const LatticeSpec& spec, const WedgeIndex& z) {
    const std::uint64_t p = spec.num_points();
    const std::size_t n = z.size();
    std::uint64_t rank = 0;
    std::uint64_t lower = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t c = z.ids[k];
        if (c < lower || c >= p) throw ArgumentError("wedge index is not a strictly increasing tuple of lattice ids");
        const std::uint64_t r = n - k - 1;
        rank += binom(p - lower, r + 1) - binom(p - c, r + 1);
        lower = c + 1;
    }
    return rank;
}

WedgeIndex distinct_wedge_unrank(const LatticeSpec& spec, std::size_t num_points, std::uint64_t rank) {
    const std::uint64_t p = spec.num_points();
    if (rank >= distinct_wedge_size(spec, num_points)) throw ArgumentError("distinct wedge rank out of range");
    WedgeIndex z{std::vector<std::uint64_t>(num_points)};
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < num_points; ++k) {
        const std::uint64_t r = num_points - k - 1;
        for (;;) {
            const std::uint64_t block = binom(p - v - 1, r);
            if (rank < block) break;
            rank -= block;
            ++v;
        }
        z.ids[k] = v;
        ++v;
    }
    return z;
}

bool next_wedge(std::uint64_t lattice_points, WedgeIndex& z) noexcept {
    for (std::size_t k = z.ids.size(); k-- > 0;) {
        if (z.ids[k] + 1 < lattice_points) {
            const std::uint64_t v = z.ids[k] + 1;
            for (std::size_t j = k; j < z.ids.size(); ++j) z.ids[j] = v;
            return true;
        }
    }
    return false;
}

bool next_distinct_wedge(std::uint64_t lattice_points, WedgeIndex& z) noexcept {
    const std::size_t n = z.ids.size();
    for (std::size_t k = n; k-- > 0;) {
        if (z.ids[k] + (n - k) < lattice_points) {
            ++z.ids[k];
            for (std::size_t j = k + 1; j < n; ++j) z.ids[j] = z.ids[j - 1] + 1;
            return true;
        }
    }
    return false;
}

WedgeRange enumerate_wedge(const LatticeSpec& spec, std::size_t num_points, std::uint64_t cap) {
    const std::uint64_t count = wedge_size(spec, num_points);
    if (count > cap) {
        throw CapacityError("wedge has " + std::to_string(count) + " elements, above the cap of " +
                                std::to_string(cap) + "; raise the cap to at least " + std::to_string(count),
                            count);
    }
    return WedgeRange(spec.num_points(), num_points, count);
}

std::uint64_t repetition_constant(const WedgeIndex& z) {
    std::uint64_t c = 1;
    std::uint64_t run = 1;
    for (std::size_t i = 1; i <= z.ids.size(); ++i) {
        if (i < z.ids.size() && z.ids[i] == z.ids[i - 1]) {
            ++run;
        } else {
            c *= detail::factorial(run);
            run = 1;
        }
    }
    return c;
}

Configuration wedge_configuration(const LatticeSpec& spec, const WedgeIndex& z, double offset) {
    std::vector<double> coords;
    coords.reserve(z.size() * spec.dim());
    for (std::uint64_t id : z.ids) {
        for (std::size_t a = 0; a < spec.dim(); ++a) {
            coords.push_back(spec.lo() + spec.delta() * (static_cast<double>(spec.component(id, a)) + offset));
        }
    }
    return Configuration(z.size(), spec.dim(), std::move(coords));
}

std::vector<std::size_t> CellAssignment::order() const {
    const Permutation inv = sigma.inverse();
    return {inv.images().begin(), inv.images().end()};
}

CellAssignment locate(const LatticeSpec& spec, const Configuration& x) {
    if (x.dim() != spec.dim()) throw ArgumentError("configuration dimension does not match the lattice");
    const std::size_t n = x.size();
    std::vector<std::uint64_t> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = cell_id(spec, x.point(i));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
    WedgeIndex wedge{std::vector<std::uint64_t>(n)};
    std::vector<std::size_t> sigma(n);
    for (std::size_t k = 0; k < n; ++k) {
        wedge.ids[k] = ids[order[k]];
        sigma[order[k]] = k;
    }
    Permutation perm(std::move(sigma));
    const int sign = parity(perm);
    const std::uint64_t rep = repetition_constant(wedge);
    return CellAssignment{std::move(wedge), std::move(perm), rep, sign};
}

double smoothstep(double t) noexcept {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (t * (t * 6.0 - 15.0) + 10.0);
}

double cutoff_profile(const LatticeSpec& spec, std::int64_t k, double x, double w) noexcept {
    const double lower = spec.position(k);
    const double upper = spec.position(k + 1);
    if (x <= lower - w || x >= upper + w) return 0.0;
    const double rise = smoothstep((x - (lower - w)) / (2.0 * w));
    const double fall = 1.0 - smoothstep((x - (upper - w)) / (2.0 * w));
    return rise * fall;
}

namespace {

void check_width(const LatticeSpec& spec, double w) {
    if (!(w > 0.0) || !(w <= spec.delta() / 2.0)) {
        throw ArgumentError("smooth cutoff width must satisfy 0 < w <= delta / 2");
    }
}

} // namespace

double smooth_cutoff(const LatticeSpec& spec, const LatticePoint& z, std::span<const double> x, double w) {
    check_width(spec, w);
    if (z.index.size() != spec.dim() || x.size() != spec.dim()) throw ArgumentError("smooth cutoff dimension mismatch");
    double v = 1.0;
    for (std::size_t a = 0; a < spec.dim(); ++a) v *= cutoff_profile(spec, z.index[a], x[a], w);
    return v;
}

std::vector<WeightedCell> cutoff_neighbors(const LatticeSpec& spec, std::span<const double> x, double w) {
    check_width(spec, w);
    if (x.size() != spec.dim()) throw ArgumentError("point dimension does not match the lattice");
    const std::int64_t n = spec.cells_per_dim();
    // Per-dimension candidates (cell, weight), increasing cell index.
    std::vector<std::vector<std::pair<std::int64_t, double>>> axes(spec.dim());
    for (std::size_t a = 0; a < spec.dim(); ++a) {
        const double c = x[a];
        if (!(c >= spec.lo() && c <= spec.hi())) throw DomainError("coordinate outside the lattice domain");
        const auto k0 = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((c - spec.lo()) / spec.delta())), 0, n - 1);
        for (std::int64_t k = std::max<std::int64_t>(0, k0 - 1); k <= std::min(n - 1, k0 + 1); ++k) {
            const double weight = cutoff_profile(spec, k, c, w);
            if (weight > 0.0) axes[a].emplace_back(k, weight);
        }
    }
    std::vector<WeightedCell> out{{0, 1.0}};
    for (std::size_t a = 0; a < spec.dim(); ++a) {
        std::vector<WeightedCell> next;
        next.reserve(out.size() * axes[a].size());
        for (const auto& cell : out) {
            for (const auto& [k, weight] : axes[a]) {
                next.push_back({cell.id * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(k), cell.weight * weight});
            }
        }
        out = std::move(next);
    }
    return out;
}

} // namespace symapprox
