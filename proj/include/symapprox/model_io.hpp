// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file model_io.hpp
 * @brief Versioned model container for built approximators.
 *
 * The container is line-oriented text: a fixed header naming the format and
 * version, the lattice and build metadata, then one record per table entry in
 * rank order. Every real number is written as a hexadecimal float, so a model
 * read back evaluates bit for bit like the one written.
 *
 *   symapprox-model 1
 *   kind sym
 *   ...
 *   records 3
 *   0 0 0x1p+0
 *   ...
 *   end
 *
 * A record holds the N d multi-index components of its wedge element, the
 * stored value, and for the linear construction the d direction components.
 */

#pragma once

#include "symapprox/approximator.hpp"

#include <filesystem>
#include <iosfwd>

namespace symapprox {

inline constexpr int kModelFormatVersion = 1;

void write_model(std::ostream& out, const Approximator& model);

/// Throws ConfigError on malformed input or a version mismatch.
Approximator read_model(std::istream& in);

/// Writes to a temporary sibling and renames it into place. Parent
/// directories are created.
void save_model(const std::filesystem::path& path, const Approximator& model);

Approximator load_model(const std::filesystem::path& path);

/// Atomic text write via temp-and-rename, shared by the report writers.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

} // namespace symapprox
