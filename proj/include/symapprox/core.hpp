// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file core.hpp
 * @brief Shared domain types: configurations of N points in R^d, permutations
 * acting on point slots, and target functions with a declared symmetry.
 *
 * Permutations are 0-indexed. A permutation acts on a configuration by
 * relabeling slots, result[i] = X[sigma(i)]; it never touches the Cartesian
 * components of a point.
 */

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace symapprox {

/// Coordinates of a single point in R^d.
using Point = std::vector<double>;

/// Per-particle box [lo, hi]^d together with the particle count N.
struct DomainSpec {
    std::size_t d = 1;
    std::size_t num_points = 1;
    double lo = 0.0;
    double hi = 1.0;

    /// Throws ArgumentError unless d, N >= 1 and lo < hi.
    void validate() const;

    bool contains(double x) const noexcept { return x >= lo && x <= hi; }

    bool operator==(const DomainSpec&) const = default;
};

/// Ordered list of N points in R^d, stored contiguously (point-major).
class Configuration {
public:
    Configuration() = default;

    /// `coords` holds num_points * dim values, point-major.
    Configuration(std::size_t num_points, std::size_t dim, std::vector<double> coords);

    static Configuration from_points(const std::vector<Point>& points);

    std::size_t size() const noexcept { return num_points_; }
    std::size_t dim() const noexcept { return dim_; }

    std::span<const double> point(std::size_t i) const noexcept {
        return {coords_.data() + i * dim_, dim_};
    }

    double coord(std::size_t i, std::size_t alpha) const noexcept { return coords_[i * dim_ + alpha]; }

    std::span<const double> coords() const noexcept { return coords_; }

    /// True when every coordinate lies in [domain.lo, domain.hi].
    bool in_domain(const DomainSpec& domain) const noexcept;

    bool operator==(const Configuration&) const = default;

private:
    std::size_t num_points_ = 0;
    std::size_t dim_ = 0;
    std::vector<double> coords_;
};

/// A bijection of {0, ..., N-1}.
class Permutation {
public:
    /// Throws ArgumentError unless `images` is a bijection of [0, N).
    explicit Permutation(std::vector<std::size_t> images);

    static Permutation identity(std::size_t n);

    std::size_t size() const noexcept { return images_.size(); }
    std::size_t operator()(std::size_t i) const noexcept { return images_[i]; }
    std::span<const std::size_t> images() const noexcept { return images_; }

    Permutation inverse() const;

    bool operator==(const Permutation&) const = default;

private:
    std::vector<std::size_t> images_;
};

/// (outer o inner)(i) = outer(inner(i)).
Permutation compose(const Permutation& outer, const Permutation& inner);

/// Signature, +1 or -1, computed from the cycle decomposition.
int parity(const Permutation& sigma);

/// result.point(i) == x.point(sigma(i)).
/// With this right action, permute(permute(x, s), t) == permute(x, compose(s, t)).
Configuration permute(const Configuration& x, const Permutation& sigma);

enum class Symmetry { symmetric, antisymmetric, none };

std::string_view to_string(Symmetry s);

/// A scalar function on configurations. Evaluators must be safe to call
/// concurrently; the builtins are pure.
class TargetFunction {
public:
    using Evaluator = std::function<double(const Configuration&)>;

    TargetFunction(std::string name, Evaluator evaluator, Symmetry symmetry,
                   std::optional<double> gradient_bound_hint = std::nullopt);

    double operator()(const Configuration& x) const { return evaluator_(x); }

    const std::string& name() const noexcept { return name_; }
    Symmetry declared_symmetry() const noexcept { return symmetry_; }

    /// Bound on the Euclidean norm of the full Nd-gradient, when known.
    std::optional<double> gradient_bound_hint() const noexcept { return gradient_hint_; }

    const Evaluator& evaluator() const noexcept { return evaluator_; }

private:
    std::string name_;
    Evaluator evaluator_;
    Symmetry symmetry_;
    std::optional<double> gradient_hint_;
};

using TargetParams = std::map<std::string, double>;

/// Builtin targets:
///   sum-coords                 sum_i sum_a x_{i,a}
///   gaussian-pair-sym          sum_{i<j} exp(-|x_i - x_j|^2 / width^2)          (width = 0.5)
///   product-smooth-sym         prod_i (1 + amplitude sin(pi sum_a x_{i,a}))      (amplitude = 0.5)
///   vandermonde-gauss-antisym  prod_{i<j} (x_{i,1} - x_{j,1}) exp(-alpha sum_i |x_i|^2)  (alpha = 1)
///   vandermonde-sum-antisym    prod_{i<j} (x_{i,1} - x_{j,1}) sum_i sum_a x_{i,a}
/// Unknown names or parameter keys raise ConfigError.
TargetFunction builtin_target(std::string_view name, const TargetParams& params = {});

std::vector<std::string> builtin_target_names();

} // namespace symapprox
