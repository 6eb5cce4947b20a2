// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

#include "symapprox/approx_sym.hpp"

#include "cutoff_tuples.hpp"
#include "symapprox/detail/numeric.hpp"
#include "symapprox/detail/parallel.hpp"
#include "symapprox/errors.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

namespace symapprox {

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

void check_configuration(const LatticeSpec& spec, std::size_t num_points, const Configuration& x) {
    if (x.size() != num_points || x.dim() != spec.dim()) {
        throw ArgumentError("configuration has " + std::to_string(x.size()) + " points in dimension " +
                            std::to_string(x.dim()) + ", tabulator expects " + std::to_string(num_points) + " in " +
                            std::to_string(spec.dim()));
    }
}

} // namespace

SymmetricTabulator::SymmetricTabulator(LatticeSpec spec, std::size_t num_points, std::vector<double> table,
                                       CutoffMode mode, double smooth_width, NodePlacement node, BuildStats stats)
    : spec_(std::move(spec)), num_points_(num_points), mode_(mode), smooth_width_(smooth_width), node_(node),
      table_(std::move(table)), stats_(stats) {
    if (num_points_ == 0) throw ArgumentError("tabulator needs N >= 1");
    if (table_.size() != wedge_size(spec_, num_points_)) {
        throw ArgumentError("symmetric table must hold exactly one entry per wedge element");
    }
    if (mode_ == CutoffMode::smooth && !(smooth_width_ > 0.0 && smooth_width_ <= spec_.delta() / 2.0)) {
        throw ArgumentError("smooth width must satisfy 0 < w <= delta / 2");
    }
    stats_.wedge_size = table_.size();
}

double SymmetricTabulator::stored(const WedgeIndex& z) const { return table_[wedge_rank(spec_, z)]; }

double SymmetricTabulator::node_value(const WedgeIndex& z) const {
    return stored(z) * static_cast<double>(repetition_constant(z));
}

SymmetricTabulator build_sym(const TargetFunction& f, const LatticeSpec& spec, std::size_t num_points,
                             const SymBuildOptions& options) {
    if (f.declared_symmetry() != Symmetry::symmetric) {
        throw ArgumentError("build_sym requires a target declared symmetric, got " +
                            std::string(to_string(f.declared_symmetry())));
    }
    if (options.mode == CutoffMode::smooth &&
        !(options.smooth_width > 0.0 && options.smooth_width <= spec.delta() / 2.0)) {
        throw ArgumentError("smooth width must satisfy 0 < w <= delta / 2");
    }
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t count = enumerate_wedge(spec, num_points, options.cap).size();
    const double offset = options.node == NodePlacement::center ? 0.5 : 0.0;

    std::vector<double> table(count);
    detail::parallel_for(count, options.threads, [&](std::size_t begin, std::size_t end) {
        WedgeIndex z = wedge_unrank(spec, num_points, begin);
        for (std::size_t r = begin; r < end; ++r) {
            const double value = f(wedge_configuration(spec, z, offset));
            if (!std::isfinite(value)) throw BuildError("target is non-finite at " + describe(spec, z));
            table[r] = value / static_cast<double>(repetition_constant(z));
            next_wedge(spec.num_points(), z);
        }
    });

    BuildStats stats;
    stats.evaluations = count;
    stats.wedge_size = count;
    stats.build_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double relative = spec.delta() / (spec.hi() - spec.lo());
    stats.coarse_lattice = relative > std::pow(static_cast<double>(num_points), -1.0 / static_cast<double>(spec.dim()));
    return SymmetricTabulator(spec, num_points, std::move(table), options.mode, options.smooth_width, options.node,
                              stats);
}

Permutation canonical_order(const Configuration& x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto pa = x.point(a);
        const auto pb = x.point(b);
        return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
    });
    return Permutation(std::move(order));
}

namespace {

double eval_smooth(const SymmetricTabulator& t, const Configuration& x) {
    const LatticeSpec& spec = t.spec();
    const Permutation order = canonical_order(x);
    std::vector<std::vector<WeightedCell>> neighbors(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        neighbors[k] = cutoff_neighbors(spec, x.point(order(k)), t.smooth_width());
    }
    double numerator = 0.0;
    double denominator = 0.0;
    WedgeIndex z{std::vector<std::uint64_t>(x.size())};
    detail::for_each_cell_tuple(neighbors, [&](std::span<const std::uint64_t> cells, double weight) {
        if (weight == 0.0) return;
        std::copy(cells.begin(), cells.end(), z.ids.begin());
        std::sort(z.ids.begin(), z.ids.end());
        const double value = t.table()[wedge_rank(spec, z)] * static_cast<double>(repetition_constant(z));
        numerator += weight * value;
        denominator += weight;
    });
    return numerator / denominator;
}

} // namespace

double eval_sym(const SymmetricTabulator& t, const Configuration& x) {
    check_configuration(t.spec(), t.num_points(), x);
    if (t.mode() == CutoffMode::smooth) return eval_smooth(t, x);
    const CellAssignment cell = locate(t.spec(), x);
    return t.table()[wedge_rank(t.spec(), cell.wedge)] * static_cast<double>(cell.repetition);
}

namespace {

void check_feature_guard(const SymmetricTabulator& t) {
    if (t.mode() != CutoffMode::indicator) throw ArgumentError("feature form is defined for indicator mode only");
    const std::uint64_t m = feature_total(t.wedge_count(), t.num_points());
    if (m > kFeatureMaterializationLimit) {
        throw CapacityError("feature form would materialize " + std::to_string(m) + " features, above " +
                                std::to_string(kFeatureMaterializationLimit),
                            m);
    }
}

} // namespace

std::vector<double> sym_features(const SymmetricTabulator& t, std::span<const double> x) {
    check_feature_guard(t);
    const std::size_t n = t.num_points();
    const std::size_t subsets = std::size_t{1} << n;
    const std::uint64_t cell = cell_id(t.spec(), x);
    std::vector<double> g;
    g.reserve(t.wedge_count() * subsets);
    for (const WedgeIndex& z : enumerate_wedge(t.spec(), n, t.wedge_count())) {
        // Bit i set iff x lies in the box of z_i.
        std::uint64_t member = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (z.ids[i] == cell) member |= std::uint64_t{1} << i;
        }
        for (std::size_t s = 0; s < subsets; ++s) {
            g.push_back(std::log(static_cast<double>(std::popcount(member & s))));
        }
    }
    return g;
}

double sym_phi(const SymmetricTabulator& t, std::span<const double> y) {
    check_feature_guard(t);
    const std::size_t n = t.num_points();
    const std::size_t subsets = std::size_t{1} << n;
    if (y.size() != t.wedge_count() * subsets) throw ArgumentError("feature vector has the wrong length");
    double total = 0.0;
    for (std::uint64_t r = 0; r < t.wedge_count(); ++r) {
        double inner = 0.0;
        for (std::size_t s = 0; s < subsets; ++s) {
            const double v = std::exp(y[r * subsets + s]);
            inner += (std::popcount(s) % 2 == 1) ? -v : v;
        }
        total += t.table()[r] * inner;
    }
    return (n % 2 == 1) ? -total : total;
}

double eval_sym_feature_form(const SymmetricTabulator& t, const Configuration& x) {
    check_configuration(t.spec(), t.num_points(), x);
    check_feature_guard(t);
    std::vector<double> y;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const std::vector<double> g = sym_features(t, x.point(j));
        if (y.empty()) {
            y = g;
        } else {
            for (std::size_t m = 0; m < y.size(); ++m) y[m] += g[m];
        }
    }
    return sym_phi(t, y);
}

std::uint64_t feature_total(std::uint64_t wedge_count, std::size_t num_points) {
    if (num_points >= 64) throw CapacityError("2^N overflows 64 bits", 0);
    auto m = detail::checked_mul(wedge_count, std::uint64_t{1} << num_points);
    if (!m) throw CapacityError("feature count overflows 64 bits", 0);
    return *m;
}

bool satisfies_accuracy_hypothesis(double epsilon, std::size_t num_points, std::size_t d) {
    const double nd = static_cast<double>(num_points * d);
    const double limit = std::sqrt(nd) * std::pow(static_cast<double>(num_points), -1.0 / static_cast<double>(d));
    return epsilon > 0.0 && epsilon < limit;
}

double theoretical_feature_bound(double epsilon, std::size_t num_points, std::size_t d) {
    if (!(epsilon > 0.0) || num_points == 0 || d == 0) throw ArgumentError("feature bound needs epsilon > 0, N, d >= 1");
    const double n = static_cast<double>(num_points);
    const double nd = static_cast<double>(num_points * d);
    return std::exp(n * std::log(2.0) + 0.5 * nd * std::log(nd) - nd * std::log(epsilon) - std::lgamma(n + 1.0));
}

FeatureCountReport feature_count(std::uint64_t wedge_count, std::size_t num_points, std::size_t d, double delta,
                                 double epsilon, double gradient_bound) {
    if (!satisfies_accuracy_hypothesis(epsilon, num_points, d)) {
        throw ArgumentError("accuracy epsilon = " + detail::decimal17(epsilon) +
                            " violates 0 < epsilon < sqrt(Nd) N^(-1/d)");
    }
    if (gradient_bound < 0.0) throw ArgumentError("gradient bound must be non-negative");
    FeatureCountReport r;
    r.wedge_count = wedge_count;
    r.per_z_features = std::uint64_t{1} << num_points;
    r.m = feature_total(wedge_count, num_points);
    r.theoretical_bound = theoretical_feature_bound(epsilon, num_points, d);
    r.epsilon = epsilon;
    r.gradient_bound = gradient_bound;
    r.required_delta = delta_for_epsilon(epsilon, num_points, d, gradient_bound);
    r.delta_sufficient = delta <= r.required_delta;
    r.exceeds_asymptotic = static_cast<double>(r.m) > r.theoretical_bound;
    return r;
}

FeatureCountReport feature_count(const SymmetricTabulator& t, double epsilon, double gradient_bound) {
    return feature_count(t.wedge_count(), t.num_points(), t.spec().dim(), t.spec().delta(), epsilon, gradient_bound);
}

ErrorBudget error_budget(double delta, std::size_t num_points, std::size_t d, double gradient_bound) {
    if (!(delta > 0.0) || num_points == 0 || d == 0 || gradient_bound < 0.0) {
        throw ArgumentError("error budget needs delta > 0, N, d >= 1 and L >= 0");
    }
    const double bound = delta * std::sqrt(static_cast<double>(num_points * d)) * gradient_bound;
    return ErrorBudget{delta, num_points, d, gradient_bound, bound};
}

double delta_for_epsilon(double epsilon, std::size_t num_points, std::size_t d, double gradient_bound) {
    if (!(epsilon > 0.0) || num_points == 0 || d == 0 || gradient_bound < 0.0) {
        throw ArgumentError("delta_for_epsilon needs epsilon > 0, N, d >= 1 and L >= 0");
    }
    if (gradient_bound == 0.0) return std::numeric_limits<double>::infinity();
    return epsilon / (std::sqrt(static_cast<double>(num_points * d)) * gradient_bound);
}

} // namespace symapprox
