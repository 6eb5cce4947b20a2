// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "symapprox/lattice.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace symapprox::detail {

/// Visits every choice of one neighboring cell per point, in odometer order
/// (last point fastest). `visit(cells, weight)` receives the chosen cell id per
/// point and the product of their cutoff weights.
template <class Visitor>
void for_each_cell_tuple(const std::vector<std::vector<WeightedCell>>& neighbors, Visitor&& visit) {
    const std::size_t n = neighbors.size();
    for (const auto& list : neighbors) {
        if (list.empty()) return;
    }
    std::vector<std::size_t> pos(n, 0);
    std::vector<std::uint64_t> cells(n);
    for (;;) {
        double weight = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            cells[j] = neighbors[j][pos[j]].id;
            weight *= neighbors[j][pos[j]].weight;
        }
        visit(std::span<const std::uint64_t>(cells), weight);
        std::size_t j = n;
        while (j > 0) {
            --j;
            if (++pos[j] < neighbors[j].size()) break;
            pos[j] = 0;
            if (j == 0) return;
        }
        if (n == 0) return;
    }
}

} // namespace symapprox::detail
