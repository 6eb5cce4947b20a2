// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

#include "symapprox/approximator.hpp"

#include "symapprox/errors.hpp"

namespace symapprox {

std::string_view to_string(ApproxKind kind) {
    switch (kind) {
    case ApproxKind::sym: return "sym";
    case ApproxKind::antisym_sorting: return "antisym-c1";
    case ApproxKind::antisym_linear: return "antisym-c2";
    }
    return "unknown";
}

ApproxKind parse_approx_kind(std::string_view name) {
    if (name == "sym") return ApproxKind::sym;
    if (name == "antisym-c1") return ApproxKind::antisym_sorting;
    if (name == "antisym-c2") return ApproxKind::antisym_linear;
    throw ConfigError("unknown kind '" + std::string(name) + "' (expected sym, antisym-c1 or antisym-c2)");
}

ApproxKind Approximator::kind() const noexcept {
    if (sym()) return ApproxKind::sym;
    return antisym()->construction() == AntisymConstruction::sorting ? ApproxKind::antisym_sorting
                                                                     : ApproxKind::antisym_linear;
}

const LatticeSpec& Approximator::spec() const noexcept {
    return std::visit([](const auto& t) -> const LatticeSpec& { return t.spec(); }, impl_);
}

std::size_t Approximator::num_points() const noexcept {
    return std::visit([](const auto& t) { return t.num_points(); }, impl_);
}

std::uint64_t Approximator::wedge_count() const {
    return std::visit([](const auto& t) -> std::uint64_t { return t.wedge_count(); }, impl_);
}

std::uint64_t Approximator::feature_count() const { return feature_total(wedge_count(), num_points()); }

double Approximator::build_seconds() const noexcept {
    if (const auto* s = sym()) return s->stats().build_seconds;
    return antisym()->build_seconds();
}

double Approximator::operator()(const Configuration& x) const {
    if (const auto* s = sym()) return eval_sym(*s, x);
    return eval_antisym(*antisym(), x);
}

Approximator build_approximator(ApproxKind kind, const TargetFunction& f, const LatticeSpec& spec,
                                std::size_t num_points, const BuildParams& params) {
    if (kind == ApproxKind::sym) {
        SymBuildOptions o;
        o.mode = params.smooth_width ? CutoffMode::smooth : CutoffMode::indicator;
        o.smooth_width = params.smooth_width.value_or(0.0);
        o.node = params.node;
        o.cap = params.cap;
        o.threads = params.threads;
        return Approximator(build_sym(f, spec, num_points, o));
    }
    if (params.node != NodePlacement::corner) throw ConfigError("anti-symmetric tabulators sample at corners only");
    AntisymBuildOptions o;
    o.construction = kind == ApproxKind::antisym_sorting ? AntisymConstruction::sorting : AntisymConstruction::linear;
    o.tau = params.tau;
    o.seed = params.seed;
    o.smooth_width = params.smooth_width;
    o.cap = params.cap;
    o.threads = params.threads;
    return Approximator(build_antisym(f, spec, num_points, o));
}

} // namespace symapprox
