// Copyright (c) 2026 timkit contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "timkit/instance.hpp"
#include "timkit/rational.hpp"
#include "timkit/scheme.hpp"

namespace timkit {

struct ScheduleColumn {
  std::vector<int> members;  // message indices, sorted
  Rat weight;                // > 0
  int cost = 1;              // channel uses consumed by this column
};

// A weighted slot assignment of message subsets. Orthogonal columns cost one
// use and must be independent sets of the (undirected) conflict graph; a
// multicast column over k uses requires every interested destination to
// receive fewer than k other column members.
struct Schedule {
  std::string kind;  // orthogonal | partition_multicast | m_matrix | greedy_pm | iterated
  std::vector<ScheduleColumn> columns;
  Rat total;           // sum of weight * cost
  Rat symmetric_rate;  // min over messages of coverage / total
  bool explicit_slots = true;  // m_matrix may report symbolically
};

// Undirected conflict adjacency (either direction blocks co-scheduling).
std::vector<std::vector<bool>> conflict_adjacency(const Instance& inst);

// Least number of channel uses a subset needs under multicast: one more than
// the largest in-subset interference count seen by any interested demand.
int multicast_cost(const Instance& inst, const std::vector<int>& part);

struct ExactOrthogonal {
  int parts = 0;
  Rat rate;  // 1/parts
  Schedule schedule;
};
// Minimum partition of the messages into conflict-graph independent sets.
ExactOrthogonal exact_orthogonal(const Instance& inst, int limit = 14);

struct RateSchedule {
  Rat rate;
  Schedule schedule;
};
// Fractional cover LP over all maximal independent sets; exact rational.
RateSchedule fractional_orthogonal(const Instance& inst, int limit = 18);

// Minimum-cost partition into multicast groups (subset dynamic program).
RateSchedule partition_multicast_exact(const Instance& inst, int limit = 14);
// Fractional covering LP over every nonempty subset at its multicast cost.
RateSchedule fractional_partition_multicast(const Instance& inst, int limit = 14);

struct GreedyMulticast {
  int slots = 0;        // channel uses actually spent
  int slot_bound = 0;   // smallest T with T(T+1)/2 >= K
  Schedule schedule;
};
// Orthogonal phase over alignment sets in decreasing size, then one residual
// multicast group; needs an instance without internal conflicts.
GreedyMulticast greedy_partition_multicast(const Instance& inst);

// Repeated best single orthogonal slot (found through the set-pair matrix
// of the remaining sub-instance), stragglers served one per use, switchover
// point optimized. Unicast instances without internal conflicts.
RateSchedule iterated_orthogonal(const Instance& inst);

// Fractional orthogonal schedule built from the set-pair matrix: one slot
// per choice of floor(m/2) set indices. Rate floor(m/2)(m-floor(m/2))/(m(m-1)).
Schedule m_matrix_schedule(const Instance& inst);

// Structural re-validation of the invariants above; throws on violation.
void validate_schedule(const Instance& inst, const Schedule& schedule);

// Concretizes a schedule as a linear scheme: weights are scaled integral,
// each column occurrence becomes a block of `cost` uses, members get fresh
// in-block columns (cost one uses a deterministic slot indicator). The
// result verifies at exactly the schedule's rates.
LinearScheme schedule_to_scheme(const Instance& inst, const Schedule& schedule,
                                std::uint64_t seed = kDefaultSeed);

}  // namespace timkit
