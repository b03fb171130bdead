// Copyright (c) 2026 timkit contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "timkit/instance.hpp"
#include "timkit/scheme.hpp"

namespace timkit {

// Ring of one-interferer unicasts: destination i receives sources i and
// i+1 (mod K). The alignment graph is empty for every K.
Instance gen_cycle_unicast(int k);

// Odd ring where destination i receives sources i-1, i, i+1 (mod K): the
// conflict graph is the K-cycle on neighbours and the alignment graph the
// K-cycle on (i-1, i+1), giving minimum conflict distance (K-1)/2. Throws
// KEven for even K.
Instance gen_pentagon_family(int k);

// m alignment cliques of m-1 unicast messages each (one per off-diagonal
// set-pair cell); the destination of the (i, j) message receives its own
// source plus every source of set j. No internal conflicts by construction.
Instance gen_aligned_cliques_unicast(int m);

// K messages, K(K-1) single-demand destinations: destination (i, j) desires
// message i and receives sources i and j only, so every pair of messages
// conflicts somewhere while the alignment graph stays empty.
Instance gen_pairwise_conflict_groupcast(int k);

// m alignment cliques of m-1 messages; each message is desired by m-1
// destinations, one per other clique, receiving its own source plus that
// whole clique.
Instance gen_aligned_cliques_groupcast(int m);

// Chain (or ring) of n cells, two boundary users per cell, adjacent cells
// interfering; boundary users of one border are combined into a single
// two-message destination.
Instance gen_linear_cellular(int n, bool wraparound);

struct FixtureEntry {
  std::string name;
  Instance instance;
  nlohmann::json expected;  // frozen derived quantities
  std::string provenance;   // "text-specified" or "figure-transcribed"
  std::optional<LinearScheme> stored_scheme;
};

// The bundled corpus; deterministic order.
std::vector<FixtureEntry> fixtures();

const FixtureEntry& fixture(const std::string& name);

// Instance produced by a generator name + parameters (the `gen` CLI).
Instance generate_named(const std::string& name, int k, int m, int n, bool wraparound);

}  // namespace timkit
