// Copyright (c) 2026 timkit contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "timkit/gf.hpp"
#include "timkit/instance.hpp"

namespace timkit::testing {

// Random multiple-unicast instance: K in [2, kmax], i.i.d. off-diagonal
// links with a per-instance density drawn first.
inline Instance random_unicast_instance(Rng& rng, int kmax = 8) {
  const int k = 2 + static_cast<int>(rng.below(kmax - 1));
  const int density = 10 + static_cast<int>(rng.below(81));  // percent
  Instance inst;
  inst.kind = Kind::TIM;
  inst.num_sources = k;
  inst.num_destinations = k;
  inst.matrix.assign(k, std::vector<std::uint8_t>(k, 0));
  for (int d = 0; d < k; ++d)
    for (int s = 0; s < k; ++s)
      inst.matrix[d][s] = d == s || static_cast<int>(rng.below(100)) < density ? 1 : 0;
  for (int m = 0; m < k; ++m) inst.messages.push_back({"W" + std::to_string(m + 1), m, {m}});
  return validate(std::move(inst));
}

}  // namespace timkit::testing
