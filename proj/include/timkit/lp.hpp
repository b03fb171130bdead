// Copyright (c) 2026 timkit contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "timkit/rational.hpp"

namespace timkit {

struct CoverColumn {
  std::vector<int> members;  // element indices covered by this column
  Rat cost;
};

struct CoverSolution {
  Rat objective;                             // minimum total cost
  std::vector<std::pair<int, Rat>> weights;  // (column index, weight > 0)
};

// Minimizes sum(cost * w) subject to covering every element at least once,
// w >= 0, by a two-phase primal simplex with Bland's rule over exact
// rationals. Every element must appear in at least one column.
CoverSolution solve_fractional_cover(int num_elements, const std::vector<CoverColumn>& columns);

// All maximal independent sets of the undirected graph given by `adj`
// (Bron-Kerbosch, deterministic vertex order, sets sorted).
std::vector<std::vector<int>> maximal_independent_sets(int n,
                                                       const std::vector<std::vector<bool>>& adj);

}  // namespace timkit
