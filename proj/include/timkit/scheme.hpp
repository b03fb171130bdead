// Copyright (c) 2026 timkit contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "timkit/gf.hpp"
#include "timkit/graphs.hpp"
#include "timkit/instance.hpp"
#include "timkit/rational.hpp"

namespace timkit {

inline constexpr std::uint64_t kDefaultSeed = 1;
// Smallest working prime for randomized synthesis; escalated on retry.
inline constexpr std::uint32_t kDefaultPrime = 257;

// A vector-linear precoding scheme over N channel uses: one N x L(W)
// precoder per message and one L(W) x N combiner per (destination, desired
// message) pair. Rates are L(W)/N exactly.
struct LinearScheme {
  int block_length = 0;  // N
  std::uint32_t p = 2;
  std::uint64_t seed = kDefaultSeed;
  std::map<std::string, FMatrix> precoders;                       // by message id
  std::map<std::pair<int, std::string>, FMatrix> combiners;       // by (destination, message id)

  Rat rate(const std::string& id) const;
  Rat symmetric_rate() const;
};

struct VerifyFailure {
  int destination = 0;  // 0-based
  std::string message;
  std::string kind;  // "zero_forcing" (interference leaks) or "invertibility"
  std::string detail;
};

struct VerifyResult {
  bool ok = false;
  std::vector<VerifyFailure> failures;
  std::map<std::string, Rat> rates;
  Rat symmetric_rate;
};

// Exact field checks of the zero-forcing and invertibility conditions: every
// combiner annihilates every received undesired precoder, and the combined
// desired response is invertible. Throws DimensionMismatch / FieldMismatch
// on malformed input; rule violations are reported, not thrown.
VerifyResult verify(const Instance& inst, const LinearScheme& scheme);

// Derives every combiner from the left null space of the interference
// received alongside the demand (indexed by message position); returns false
// with a reason when some demand is not separable. Combiners are never free
// parameters anywhere in this library.
bool derive_combiners(const Instance& inst, const std::vector<FMatrix>& precoders_by_index,
                      int block_length, std::uint32_t p,
                      std::map<std::pair<int, std::string>, FMatrix>* out, std::string* why);

enum class MergePolicy { None, Greedy };

struct HalfRateOptions {
  MergePolicy merge = MergePolicy::None;
  std::uint32_t p = 0;  // 0 = auto (smallest prime with enough subspaces over N=2)
  bool allow_extensions = true;
  std::uint64_t seed = kDefaultSeed;
};

// Alignment-set classes after optional greedy merging (a set joins the first
// earlier class it has no conflict edge against, processed largest-first).
std::vector<std::vector<int>> merged_alignment_classes(const Instance& inst,
                                                       const StructureGraphs& g,
                                                       MergePolicy policy);

// Rate-1/2 construction for instances without internal conflicts: one shared
// one-dimensional precoder per (merged) alignment class over two channel
// uses, all classes pairwise linearly independent. When the field is fixed
// and too small, symbol extensions widen the block (N = 2e, e-dimensional
// pairwise non-intersecting subspaces). The result always verifies at
// symmetric rate exactly 1/2.
LinearScheme build_half_rate(const Instance& inst, const HalfRateOptions& opts = {});

// Alignment-set precoder synthesis over N = 2*delta+1 channel uses for
// networks whose alignment sets each have no cycles or no forks: shared
// matrices for conflict-free sets, inherited-subspace trees, cyclic sliding
// windows, the three-member-cycle special cases, and the one-symbol
// multicast fallback when a four-message acyclic chain exists. Retries with
// fresh randomness and an escalating prime until verification passes.
// CLI name for this mode: "theorem12".
LinearScheme build_tree_cycle(const Instance& inst, std::uint64_t seed = kDefaultSeed);

// True when every alignment set has no cycles or no forks and at least one
// internal conflict exists somewhere (the synthesis precondition).
bool tree_cycle_applicable(const Instance& inst, const StructureGraphs& g);

// Transposes precoders and combiners onto the dual instance; rates carry
// over unchanged. Requires a unicast instance and a verifying input scheme.
LinearScheme dualize_scheme(const Instance& inst, const LinearScheme& scheme);

struct OracleLimits {
  int n_max = 4;
  std::vector<std::uint32_t> primes = {2, 3};
  int k_max = 6;
};

struct OracleResult {
  bool feasible = false;
  int block_length = 0;  // smallest feasible N
  std::uint32_t p = 0;
  Rat rate;                                  // 1/N when feasible, 0 otherwise
  std::map<std::string, FMatrix> lines;      // witnessing one-column precoders
};

// Exhaustive search over assignments of one-dimensional subspaces of
// GF(p)^N to messages, feasible when every demand's line stays outside the
// span of the interference received alongside it. Scans N ascending and
// returns the first feasible block length. Independent of the constructive
// builders; used as an oracle against them.
OracleResult oracle_best_linear(const Instance& inst, const OracleLimits& limits = {});

nlohmann::json scheme_to_json(const LinearScheme& scheme);
LinearScheme scheme_from_json(const nlohmann::json& j);

}  // namespace timkit
