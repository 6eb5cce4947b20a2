// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file experiment.hpp
 * @brief Experiment configuration and the build / eval / verify / sweep commands.
 *
 * Configurations are JSON objects; unknown keys are rejected. Each command
 * returns its process exit code and reports failures by exception, mapped to
 * exit codes by exit_code_for().
 */

#pragma once

#include "symapprox/approximator.hpp"
#include "symapprox/core.hpp"
#include "symapprox/harness.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace symapprox {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapacity = 3;

struct ExperimentConfig {
    ApproxKind kind = ApproxKind::sym;
    std::size_t d = 1;
    std::size_t num_points = 1;
    double lo = 0.0;
    double hi = 1.0;
    std::optional<double> delta;
    std::optional<double> epsilon;
    /// Sweep grid.
    std::vector<double> deltas;
    std::optional<double> smooth_width;
    NodePlacement node = NodePlacement::corner;
    double tau = 1e-3;
    std::string target;
    TargetParams target_params;
    std::uint64_t seed = 0;
    std::size_t samples = 10'000;
    unsigned threads = 1;
    std::uint64_t cap = kDefaultWedgeCap;
    /// Finite-difference step; default 1e-4 (hi - lo).
    std::optional<double> fd_step;
    std::size_t n_perms = 8;
    double min_gap = 0.05;
    std::filesystem::path output_dir = "out";
    /// Defaults to <output_dir>/model.symapprox.
    std::optional<std::filesystem::path> model_path;
    /// When false every wall-time field is written as 0.
    bool timing = true;

    DomainSpec domain() const;
    BuildParams build_params() const;
    std::filesystem::path model_file() const;
};

/// Throws ConfigError on syntax errors, unknown keys, wrong types or
/// violated invariants (exactly one of delta / epsilon unless only a sweep
/// grid is given).
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> out;
    std::optional<unsigned> threads;
    std::optional<std::uint64_t> cap;
    bool no_timing = false;
};

void apply_overrides(ExperimentConfig& config, const Overrides& overrides);

struct ResolvedDelta {
    double delta = 0.0;
    /// Measured L; present when it was needed to derive delta.
    std::optional<double> gradient_bound;
};

/// delta as given, or delta_for_epsilon with the measured L (capped at
/// hi - lo). Throws ConfigError when epsilon violates the accuracy hypothesis.
ResolvedDelta resolve_delta(const ExperimentConfig& config, const TargetFunction& f);

/// "x,y;x,y" with one group per point. Throws ArgumentError when the shape
/// does not match.
Configuration parse_configuration_literal(std::string_view text, std::size_t num_points, std::size_t d);

int cmd_build(const ExperimentConfig& config, std::ostream& out);

/// `input` is a configuration literal or the path of a file holding one
/// (newlines act as point separators).
int cmd_eval(const std::filesystem::path& model, std::string_view input, std::ostream& out);

struct VerifyHooks {
    /// Replaces the approximant evaluator; used to inject faults.
    std::function<Evaluator(Evaluator)> wrap_approx;
};

/// Writes report.json and report.csv into the output directory.
int cmd_verify(const ExperimentConfig& config, std::ostream& out, const VerifyHooks& hooks = {});

/// Writes the sweep table to `out` and to <output_dir>/sweep.csv.
int cmd_sweep(const ExperimentConfig& config, std::ostream& out);

/// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& e) noexcept;

} // namespace symapprox
