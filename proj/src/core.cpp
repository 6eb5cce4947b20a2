// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

#include "symapprox/core.hpp"

#include "symapprox/errors.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <utility>

namespace symapprox {

void DomainSpec::validate() const {
    if (d == 0) throw ArgumentError("domain dimension d must be positive");
    if (num_points == 0) throw ArgumentError("number of points N must be positive");
    if (!(lo < hi)) throw ArgumentError("domain requires lo < hi");
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw ArgumentError("domain bounds must be finite");
}

Configuration::Configuration(std::size_t num_points, std::size_t dim, std::vector<double> coords)
    : num_points_(num_points), dim_(dim), coords_(std::move(coords)) {
    if (coords_.size() != num_points_ * dim_) {
        throw ArgumentError("configuration holds " + std::to_string(coords_.size()) +
                            " coordinates, expected " + std::to_string(num_points_ * dim_));
    }
}

Configuration Configuration::from_points(const std::vector<Point>& points) {
    const std::size_t dim = points.empty() ? 0 : points.front().size();
    std::vector<double> flat;
    flat.reserve(points.size() * dim);
    for (const auto& p : points) {
        if (p.size() != dim) throw ArgumentError("all points must share the same dimension");
        flat.insert(flat.end(), p.begin(), p.end());
    }
    return Configuration(points.size(), dim, std::move(flat));
}

bool Configuration::in_domain(const DomainSpec& domain) const noexcept {
    for (double c : coords_) {
        if (!domain.contains(c)) return false;
    }
    return true;
}

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t v : images_) {
        if (v >= images_.size() || seen[v]) throw ArgumentError("permutation images must be a bijection of [0, N)");
        seen[v] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> images(n);
    for (std::size_t i = 0; i < n; ++i) images[i] = i;
    return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = i;
    return Permutation(std::move(inv));
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
    if (outer.size() != inner.size()) throw ArgumentError("cannot compose permutations of different sizes");
    std::vector<std::size_t> images(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i) images[i] = outer(inner(i));
    return Permutation(std::move(images));
}

int parity(const Permutation& sigma) {
    const std::size_t n = sigma.size();
    std::vector<bool> visited(n, false);
    std::size_t cycles = 0;
    for (std::size_t start = 0; start < n; ++start) {
        if (visited[start]) continue;
        ++cycles;
        for (std::size_t j = start; !visited[j]; j = sigma(j)) visited[j] = true;
    }
    return ((n - cycles) % 2 == 0) ? 1 : -1;
}

Configuration permute(const Configuration& x, const Permutation& sigma) {
    if (sigma.size() != x.size()) {
        throw ArgumentError("permutation of size " + std::to_string(sigma.size()) +
                            " applied to configuration of " + std::to_string(x.size()) + " points");
    }
    std::vector<double> out;
    out.reserve(x.size() * x.dim());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto p = x.point(sigma(i));
        out.insert(out.end(), p.begin(), p.end());
    }
    return Configuration(x.size(), x.dim(), std::move(out));
}

std::string_view to_string(Symmetry s) {
    switch (s) {
    case Symmetry::symmetric: return "symmetric";
    case Symmetry::antisymmetric: return "antisymmetric";
    case Symmetry::none: return "none";
    }
    return "none";
}

TargetFunction::TargetFunction(std::string name, Evaluator evaluator, Symmetry symmetry,
                               std::optional<double> gradient_bound_hint)
    : name_(std::move(name)), evaluator_(std::move(evaluator)), symmetry_(symmetry),
      gradient_hint_(gradient_bound_hint) {
    if (!evaluator_) throw ArgumentError("target function needs an evaluator");
}

namespace {

double param_or(const TargetParams& params, const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void check_params(std::string_view name, const TargetParams& params, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : params) {
        if (!allowed.contains(key)) {
            throw ConfigError("unknown parameter '" + key + "' for target '" + std::string(name) + "'");
        }
        if (!std::isfinite(value)) throw ConfigError("parameter '" + key + "' must be finite");
    }
}

// prod_{i<j} (x_{i,1} - x_{j,1}) in fixed (i, j) order.
double first_coordinate_vandermonde(const Configuration& x) {
    double v = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) v *= x.coord(i, 0) - x.coord(j, 0);
    }
    return v;
}

double coordinate_sum(const Configuration& x) {
    double s = 0.0;
    for (double c : x.coords()) s += c;
    return s;
}

} // namespace

TargetFunction builtin_target(std::string_view name, const TargetParams& params) {
    if (name == "sum-coords") {
        check_params(name, params, {});
        return TargetFunction(std::string(name), coordinate_sum, Symmetry::symmetric);
    }
    if (name == "gaussian-pair-sym") {
        check_params(name, params, {"width"});
        const double width = param_or(params, "width", 0.5);
        if (!(width > 0.0)) throw ConfigError("gaussian-pair-sym requires width > 0");
        const double inv_w2 = 1.0 / (width * width);
        return TargetFunction(
            std::string(name),
            [inv_w2](const Configuration& x) {
                double total = 0.0;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    for (std::size_t j = i + 1; j < x.size(); ++j) {
                        double r2 = 0.0;
                        for (std::size_t a = 0; a < x.dim(); ++a) {
                            const double diff = x.coord(i, a) - x.coord(j, a);
                            r2 += diff * diff;
                        }
                        total += std::exp(-r2 * inv_w2);
                    }
                }
                return total;
            },
            Symmetry::symmetric);
    }
    if (name == "product-smooth-sym") {
        check_params(name, params, {"amplitude"});
        const double amp = param_or(params, "amplitude", 0.5);
        return TargetFunction(
            std::string(name),
            [amp](const Configuration& x) {
                double prod = 1.0;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    double s = 0.0;
                    for (double c : x.point(i)) s += c;
                    prod *= 1.0 + amp * std::sin(std::numbers::pi * s);
                }
                return prod;
            },
            Symmetry::symmetric);
    }
    if (name == "vandermonde-gauss-antisym") {
        check_params(name, params, {"alpha"});
        const double alpha = param_or(params, "alpha", 1.0);
        return TargetFunction(
            std::string(name),
            [alpha](const Configuration& x) {
                double r2 = 0.0;
                for (double c : x.coords()) r2 += c * c;
                return first_coordinate_vandermonde(x) * std::exp(-alpha * r2);
            },
            Symmetry::antisymmetric);
    }
    if (name == "vandermonde-sum-antisym") {
        check_params(name, params, {});
        return TargetFunction(
            std::string(name),
            [](const Configuration& x) { return first_coordinate_vandermonde(x) * coordinate_sum(x); },
            Symmetry::antisymmetric);
    }
    throw ConfigError("unknown builtin target '" + std::string(name) + "'");
}

std::vector<std::string> builtin_target_names() {
    return {"sum-coords", "gaussian-pair-sym", "product-smooth-sym", "vandermonde-gauss-antisym",
            "vandermonde-sum-antisym"};
}

} // namespace symapprox
