// Copyright (c) 2026 timkit contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "timkit/instance.hpp"

namespace timkit {

struct InternalConflict {
  int a = 0, b = 0;  // message indices, a < b
  int distance = 0;  // shortest alignment-graph path length
};

// The alignment graph (undirected, on messages), the conflict graph
// (directed, victim <- interferer), the component partition of the alignment
// graph, and the internal conflicts with their distances. Built once per
// instance and shared read-only.
struct StructureGraphs {
  std::vector<std::pair<int, int>> alignment_edges;  // a < b
  std::vector<std::pair<int, int>> conflict_edges;   // (victim, interferer)
  std::vector<std::vector<int>> alignment_sets;      // each sorted; ordered by min member
  std::vector<int> component;                        // message -> alignment set index
  std::vector<InternalConflict> internal_conflicts;
  std::optional<int> min_conflict_distance;  // nullopt == infinity (no internal conflicts)

  bool adjacent_alignment(int a, int b) const;
  bool conflict_between(int a, int b) const;  // either direction
};

StructureGraphs build_graphs(const Instance& inst);

// Directed bipartite demand graph: message -> destination demand edges and
// destination -> message edges wherever the destination cannot receive the
// message's source (TIM: link absent; IC: antidote present).
struct DemandGraph {
  int num_messages = 0;
  int num_destinations = 0;
  std::vector<std::pair<int, int>> demand_edges;    // message -> destination
  std::vector<std::pair<int, int>> antidote_edges;  // destination -> message
};

DemandGraph demand_graph(const Instance& inst);
bool is_acyclic(const DemandGraph& dg);

// Greedy demand relaxation: repeatedly bind all remaining demands of a
// destination that receives every remaining message's source, until all
// messages are bound. Success yields an instance whose demand graph is
// acyclic and where every message has exactly one destination; failure is a
// value, not an error.
std::optional<Instance> unicast_relaxation(const Instance& inst);

enum class SetShape { NoInternalConflict, Acyclic, PureCycle, Other };

struct SetClass {
  SetShape shape = SetShape::NoInternalConflict;
  bool has_cycle = false;          // |E| >= |V| within the component
  bool has_fork = false;           // max degree >= 3 within the component
  bool has_internal_conflict = false;
};

std::string shape_name(SetShape s);
std::vector<SetClass> classify_alignment_sets(const Instance& inst, const StructureGraphs& g);

// Sub-instance induced by a set of message indices: keeps exactly those
// messages with all their demands, the sources that still own a message, and
// the destinations that still desire something.
Instance induced_instance(const Instance& inst, const std::vector<int>& message_indices);

// A subset of messages is acyclic when the induced sub-instance admits a
// successful unicast relaxation (equivalently, its symmetric rate collapses
// to one message per |subset| uses).
bool subset_acyclic(const Instance& inst, const std::vector<int>& message_indices);

// One DOT digraph containing all three views: solid undirected edges for
// alignment, dashed directed edges for conflicts, and the directed bipartite
// demand graph against box-shaped destination nodes.
std::string to_dot(const Instance& inst);

}  // namespace timkit
