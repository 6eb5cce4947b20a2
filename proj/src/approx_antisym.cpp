// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

#include "symapprox/approx_antisym.hpp"

#include "cutoff_tuples.hpp"
#include "symapprox/approx_sym.hpp"
#include "symapprox/detail/parallel.hpp"
#include "symapprox/detail/rng.hpp"
#include "symapprox/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <string>

namespace symapprox {

AntisymTabulator::AntisymTabulator(LatticeSpec spec, std::size_t num_points, AntisymConstruction construction,
                                   std::vector<double> coefficients, std::vector<double> directions, double tau,
                                   std::uint64_t seed, std::optional<double> smooth_width, double build_seconds)
    : spec_(std::move(spec)), num_points_(num_points), construction_(construction),
      coefficients_(std::move(coefficients)), directions_(std::move(directions)), tau_(tau), seed_(seed),
      smooth_width_(smooth_width), build_seconds_(build_seconds) {
    if (num_points_ == 0) throw ArgumentError("tabulator needs N >= 1");
    if (coefficients_.size() != distinct_wedge_size(spec_, num_points_)) {
        throw ArgumentError("anti-symmetric table must hold one entry per distinct wedge element");
    }
    if (construction_ == AntisymConstruction::linear) {
        if (directions_.size() != coefficients_.size() * spec_.dim()) {
            throw ArgumentError("linear construction needs one direction per entry");
        }
    } else {
        if (!directions_.empty()) throw ArgumentError("sorting construction stores no directions");
        if (smooth_width_) throw ArgumentError("smooth cutoffs require the linear construction");
    }
    if (smooth_width_ && !(*smooth_width_ > 0.0 && *smooth_width_ <= spec_.delta() / 2.0)) {
        throw ArgumentError("smooth width must satisfy 0 < w <= delta / 2");
    }
}

std::uint64_t AntisymTabulator::wedge_count() const { return wedge_size(spec_, num_points_); }

double AntisymTabulator::coefficient(const WedgeIndex& z) const {
    if (!z.distinct()) throw ArgumentError("repeated wedge elements carry no coefficient");
    return coefficients_[distinct_wedge_rank(spec_, z)];
}

std::span<const double> AntisymTabulator::direction(const WedgeIndex& z) const {
    if (construction_ != AntisymConstruction::linear) throw ArgumentError("sorting construction has no directions");
    if (!z.distinct()) throw ArgumentError("repeated wedge elements carry no direction");
    return direction_at(distinct_wedge_rank(spec_, z));
}

double vandermonde_product(std::span<const double> ys) {
    double v = 1.0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        for (std::size_t j = i + 1; j < ys.size(); ++j) v *= ys[i] - ys[j];
    }
    return v;
}

double sorting_denominator(std::size_t num_points) {
    std::vector<double> ys(num_points);
    for (std::size_t i = 0; i < num_points; ++i) ys[i] = static_cast<double>(i + 1);
    return vandermonde_product(ys);
}

double linear_vandermonde(std::span<const double> direction, const Configuration& x) {
    if (direction.size() != x.dim()) throw ArgumentError("direction dimension mismatch");
    std::vector<double> ys(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dot = 0.0;
        for (std::size_t a = 0; a < x.dim(); ++a) dot += direction[a] * x.coord(i, a);
        ys[i] = dot;
    }
    return vandermonde_product(ys);
}

bool direction_accepts(const LatticeSpec& spec, const WedgeIndex& z, std::span<const double> a, double tau) {
    if (a.size() != spec.dim()) throw ArgumentError("direction dimension mismatch");
    for (std::size_t i = 0; i < z.size(); ++i) {
        for (std::size_t j = i + 1; j < z.size(); ++j) {
            double dot = 0.0;
            double norm2 = 0.0;
            for (std::size_t k = 0; k < spec.dim(); ++k) {
                const auto diff = static_cast<double>(spec.component(z.ids[i], k) - spec.component(z.ids[j], k));
                dot += a[k] * diff;
                norm2 += diff * diff;
            }
            if (norm2 == 0.0) return false;
            if (std::fabs(dot) / std::sqrt(norm2) < tau) return false;
        }
    }
    return true;
}

namespace {

std::string describe(const LatticeSpec& spec, const WedgeIndex& z) {
    std::ostringstream os;
    os << "Z = (";
    for (std::size_t k = 0; k < z.size(); ++k) {
        const LatticePoint p = spec.point_of(z.ids[k]);
        os << (k ? ", " : "") << "(";
        for (std::size_t a = 0; a < p.index.size(); ++a) os << (a ? "," : "") << p.index[a];
        os << ")";
    }
    os << ")";
    return os.str();
}

} // namespace

std::vector<double> choose_direction(const LatticeSpec& spec, const WedgeIndex& z, double tau, std::uint64_t seed) {
    if (!(tau > 0.0)) throw ArgumentError("direction threshold tau must be positive");
    if (!z.distinct()) throw ArgumentError("choose_direction requires distinct lattice points");
    const std::size_t d = spec.dim();
    if (d == 1) {
        std::vector<double> a{1.0};
        if (!direction_accepts(spec, z, a, tau)) {
            throw BuildError("no admissible direction for " + describe(spec, z) + " with tau above 1");
        }
        return a;
    }
    detail::Fnv1a64 hash;
    hash.update_i64(static_cast<std::int64_t>(seed));
    for (std::uint64_t id : z.ids) {
        for (std::size_t k = 0; k < d; ++k) hash.update_i64(spec.component(id, k));
    }
    detail::RngStream rng(hash.digest());
    std::vector<double> a(d);
    for (std::size_t draw = 0; draw < kDirectionMaxDraws; ++draw) {
        double norm2 = 0.0;
        for (auto& c : a) {
            c = rng.next_normal();
            norm2 += c * c;
        }
        if (norm2 == 0.0) continue;
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& c : a) c *= inv;
        if (direction_accepts(spec, z, a, tau)) return a;
    }
    throw BuildError("direction search failed after " + std::to_string(kDirectionMaxDraws) + " draws for " +
                     describe(spec, z) + " (tau = " + std::to_string(tau) + " too large)");
}

AntisymTabulator build_antisym(const TargetFunction& f, const LatticeSpec& spec, std::size_t num_points,
                               const AntisymBuildOptions& options) {
    if (f.declared_symmetry() != Symmetry::antisymmetric) {
        throw ArgumentError("build_antisym requires a target declared anti-symmetric, got " +
                            std::string(to_string(f.declared_symmetry())));
    }
    const bool linear = options.construction == AntisymConstruction::linear;
    if (options.smooth_width && !linear) throw ArgumentError("smooth cutoffs require the linear construction");
    if (linear && !(options.tau > 0.0)) throw ArgumentError("direction threshold tau must be positive");
    const auto start = std::chrono::steady_clock::now();
    enumerate_wedge(spec, num_points, options.cap);
    const std::uint64_t count = distinct_wedge_size(spec, num_points);
    const std::size_t d = spec.dim();
    const double sorting_denom = sorting_denominator(num_points);

    std::vector<double> coefficients(count);
    std::vector<double> directions(linear ? count * d : 0);
    detail::parallel_for(count, options.threads, [&](std::size_t begin, std::size_t end) {
        WedgeIndex z = distinct_wedge_unrank(spec, num_points, begin);
        for (std::size_t r = begin; r < end; ++r) {
            const Configuration corner = wedge_configuration(spec, z);
            const double value = f(corner);
            if (!std::isfinite(value)) throw BuildError("target is non-finite at " + describe(spec, z));
            if (linear) {
                const std::vector<double> a = choose_direction(spec, z, options.tau, options.seed);
                std::copy(a.begin(), a.end(), directions.begin() + static_cast<std::ptrdiff_t>(r * d));
                coefficients[r] = value / linear_vandermonde(a, corner);
            } else {
                coefficients[r] = value / sorting_denom;
            }
            next_distinct_wedge(spec.num_points(), z);
        }
    });
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return AntisymTabulator(spec, num_points, options.construction, std::move(coefficients), std::move(directions),
                            options.tau, options.seed, options.smooth_width, seconds);
}

namespace {

double eval_smooth(const AntisymTabulator& t, const Configuration& x) {
    const LatticeSpec& spec = t.spec();
    const Permutation order = canonical_order(x);
    const Configuration canonical = permute(x, order);
    std::vector<std::vector<WeightedCell>> neighbors(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        neighbors[k] = cutoff_neighbors(spec, canonical.point(k), *t.smooth_width());
    }
    double numerator = 0.0;
    double denominator = 0.0;
    WedgeIndex z{std::vector<std::uint64_t>(x.size())};
    detail::for_each_cell_tuple(neighbors, [&](std::span<const std::uint64_t> cells, double weight) {
        if (weight == 0.0) return;
        denominator += weight;
        std::copy(cells.begin(), cells.end(), z.ids.begin());
        std::sort(z.ids.begin(), z.ids.end());
        if (!z.distinct()) return;
        const std::uint64_t rank = distinct_wedge_rank(spec, z);
        numerator += weight * (t.coefficients()[rank] * linear_vandermonde(t.direction_at(rank), canonical));
    });
    const double value = numerator / denominator;
    return parity(order) < 0 ? -value : value;
}

} // namespace

double eval_antisym(const AntisymTabulator& t, const Configuration& x) {
    if (x.size() != t.num_points() || x.dim() != t.spec().dim()) {
        throw ArgumentError("configuration shape does not match the tabulator");
    }
    if (t.smooth_width()) return eval_smooth(t, x);
    const CellAssignment cell = locate(t.spec(), x);
    if (!cell.wedge.distinct()) return 0.0;
    const std::uint64_t rank = distinct_wedge_rank(t.spec(), cell.wedge);
    const double coef = t.coefficients()[rank];
    if (t.construction() == AntisymConstruction::sorting) {
        std::vector<double> ys(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) ys[i] = static_cast<double>(cell.sigma(i) + 1);
        return coef * vandermonde_product(ys);
    }
    const Configuration sorted = permute(x, cell.sigma.inverse());
    const double value = coef * linear_vandermonde(t.direction_at(rank), sorted);
    return cell.parity < 0 ? -value : value;
}

std::vector<double> equivariant_sort_map(const LatticeSpec& spec, const WedgeIndex& z, const Configuration& x) {
    if (!z.distinct()) throw ArgumentError("equivariant sort map needs distinct lattice points");
    const CellAssignment cell = locate(spec, x);
    if (cell.wedge != z) throw ArgumentError("configuration does not lie in the box union of Z");
    std::vector<double> ys(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) ys[i] = static_cast<double>(cell.sigma(i) + 1);
    return ys;
}

} // namespace symapprox
