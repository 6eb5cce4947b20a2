// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file approximator.hpp
 * @brief One handle over the symmetric and anti-symmetric tabulators.
 */

#pragma once

#include "symapprox/approx_antisym.hpp"
#include "symapprox/approx_sym.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace symapprox {

enum class ApproxKind { sym, antisym_sorting, antisym_linear };

/// "sym", "antisym-c1" or "antisym-c2".
std::string_view to_string(ApproxKind kind);
/// Throws ConfigError on an unknown name.
ApproxKind parse_approx_kind(std::string_view name);

struct BuildParams {
    /// Enables smooth cutoffs of this width.
    std::optional<double> smooth_width;
    NodePlacement node = NodePlacement::corner;
    double tau = 1e-3;
    std::uint64_t seed = 0;
    std::uint64_t cap = kDefaultWedgeCap;
    unsigned threads = 1;
};

class Approximator {
public:
    explicit Approximator(SymmetricTabulator t) : impl_(std::move(t)) {}
    explicit Approximator(AntisymTabulator t) : impl_(std::move(t)) {}

    ApproxKind kind() const noexcept;
    const LatticeSpec& spec() const noexcept;
    std::size_t num_points() const noexcept;
    /// Size of the full wedge.
    std::uint64_t wedge_count() const;
    /// wedge_count * 2^N.
    std::uint64_t feature_count() const;
    double build_seconds() const noexcept;

    double operator()(const Configuration& x) const;

    const SymmetricTabulator* sym() const noexcept { return std::get_if<SymmetricTabulator>(&impl_); }
    const AntisymTabulator* antisym() const noexcept { return std::get_if<AntisymTabulator>(&impl_); }

private:
    std::variant<SymmetricTabulator, AntisymTabulator> impl_;
};

Approximator build_approximator(ApproxKind kind, const TargetFunction& f, const LatticeSpec& spec,
                                std::size_t num_points, const BuildParams& params = {});

} // namespace symapprox
