// Copyright (c) 2026 timkit contributors
// SPDX-License-Identifier: Apache-2.0

#include "timkit/graphs.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace timkit {

bool StructureGraphs::adjacent_alignment(int a, int b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(alignment_edges.begin(), alignment_edges.end(), std::make_pair(a, b));
}

bool StructureGraphs::conflict_between(int a, int b) const {
  return std::binary_search(conflict_edges.begin(), conflict_edges.end(), std::make_pair(a, b)) ||
         std::binary_search(conflict_edges.begin(), conflict_edges.end(), std::make_pair(b, a));
}

StructureGraphs build_graphs(const Instance& inst) {
  const int K = inst.message_count();
  std::set<std::pair<int, int>> align;
  std::set<std::pair<int, int>> conflict;

  for (int d = 0; d < inst.num_destinations; ++d) {
    std::vector<int> heard;
    for (int m = 0; m < K; ++m)
      if (inst.hears(d, inst.messages[m].source)) heard.push_back(m);
    for (int k : inst.demands(d)) {
      // Conflict: every other received message interferes with the demand,
      // co-desired messages included (they must be zero-forced too).
      for (int m : heard)
        if (m != k) conflict.insert({k, m});
      // Alignment: any two received messages other than the demand itself.
      for (std::size_t i = 0; i < heard.size(); ++i) {
        if (heard[i] == k) continue;
        for (std::size_t j = i + 1; j < heard.size(); ++j) {
          if (heard[j] == k) continue;
          align.insert({heard[i], heard[j]});
        }
      }
    }
  }

  StructureGraphs g;
  g.alignment_edges.assign(align.begin(), align.end());
  g.conflict_edges.assign(conflict.begin(), conflict.end());

  // Connected components of the alignment graph.
  std::vector<std::vector<int>> adj(K);
  for (auto [a, b] : g.alignment_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  g.component.assign(K, -1);
  for (int start = 0; start < K; ++start) {
    if (g.component[start] >= 0) continue;
    const int id = static_cast<int>(g.alignment_sets.size());
    std::vector<int> members;
    std::deque<int> queue{start};
    g.component[start] = id;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      members.push_back(v);
      for (int w : adj[v]) {
        if (g.component[w] < 0) {
          g.component[w] = id;
          queue.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    g.alignment_sets.push_back(std::move(members));
  }

  // Internal conflicts: same-component conflict pairs, with BFS distance over
  // unweighted alignment edges.
  std::set<std::pair<int, int>> internal_pairs;
  for (auto [victim, interferer] : g.conflict_edges) {
    if (g.component[victim] != g.component[interferer]) continue;
    internal_pairs.insert({std::min(victim, interferer), std::max(victim, interferer)});
  }
  for (auto [a, b] : internal_pairs) {
    std::vector<int> dist(K, -1);
    std::deque<int> queue{a};
    dist[a] = 0;
    while (!queue.empty() && dist[b] < 0) {
      int v = queue.front();
      queue.pop_front();
      for (int w : adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
      }
    }
    g.internal_conflicts.push_back({a, b, dist[b]});
    if (!g.min_conflict_distance || dist[b] < *g.min_conflict_distance)
      g.min_conflict_distance = dist[b];
  }
  return g;
}

DemandGraph demand_graph(const Instance& inst) {
  DemandGraph dg;
  dg.num_messages = inst.message_count();
  dg.num_destinations = inst.num_destinations;
  for (int m = 0; m < dg.num_messages; ++m)
    for (int d : inst.messages[m].destinations) dg.demand_edges.push_back({m, d});
  for (int d = 0; d < inst.num_destinations; ++d)
    for (int m = 0; m < dg.num_messages; ++m)
      if (!inst.hears(d, inst.messages[m].source)) dg.antidote_edges.push_back({d, m});
  return dg;
}

bool is_acyclic(const DemandGraph& dg) {
  // Nodes: messages [0, K), destinations [K, K+D). Kahn's algorithm.
  const int n = dg.num_messages + dg.num_destinations;
  std::vector<std::vector<int>> out(n);
  std::vector<int> indeg(n, 0);
  for (auto [m, d] : dg.demand_edges) {
    out[m].push_back(dg.num_messages + d);
    ++indeg[dg.num_messages + d];
  }
  for (auto [d, m] : dg.antidote_edges) {
    out[dg.num_messages + d].push_back(m);
    ++indeg[m];
  }
  std::deque<int> queue;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) queue.push_back(v);
  int seen = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    ++seen;
    for (int w : out[v])
      if (--indeg[w] == 0) queue.push_back(w);
  }
  return seen == n;
}

std::optional<Instance> unicast_relaxation(const Instance& inst) {
  const int K = inst.message_count();
  std::vector<bool> bound(K, false);
  int remaining = K;
  // (destination, messages bound to it) in pick order.
  std::vector<std::pair<int, std::vector<int>>> picks;

  while (remaining > 0) {
    int pick = -1;
    for (int d = 0; d < inst.num_destinations && pick < 0; ++d) {
      bool desires_remaining = false;
      bool hears_all = true;
      for (int m = 0; m < K; ++m) {
        if (bound[m]) continue;
        if (inst.desired_at(d, m)) desires_remaining = true;
        if (!inst.hears(d, inst.messages[m].source)) hears_all = false;
      }
      if (desires_remaining && hears_all) pick = d;
    }
    if (pick < 0) return std::nullopt;
    std::vector<int> took;
    for (int m = 0; m < K; ++m) {
      if (!bound[m] && inst.desired_at(pick, m)) {
        bound[m] = true;
        took.push_back(m);
        --remaining;
      }
    }
    picks.push_back({pick, std::move(took)});
  }

  Instance out;
  out.kind = inst.kind;
  out.num_sources = inst.num_sources;
  out.num_destinations = static_cast<int>(picks.size());
  for (const auto& [d, msgs] : picks) out.matrix.push_back(inst.matrix[d]);
  out.messages = inst.messages;
  for (auto& m : out.messages) m.destinations.clear();
  for (int nd = 0; nd < static_cast<int>(picks.size()); ++nd)
    for (int m : picks[nd].second) out.messages[m].destinations = {nd};
  return validate(std::move(out));
}

std::string shape_name(SetShape s) {
  switch (s) {
    case SetShape::NoInternalConflict: return "no_internal_conflict";
    case SetShape::Acyclic: return "acyclic";
    case SetShape::PureCycle: return "pure_cycle";
    case SetShape::Other: return "other";
  }
  return "?";
}

std::vector<SetClass> classify_alignment_sets(const Instance& inst, const StructureGraphs& g) {
  (void)inst;
  std::vector<SetClass> out(g.alignment_sets.size());
  std::vector<int> edge_count(g.alignment_sets.size(), 0);
  std::vector<int> degree(g.component.size(), 0);
  for (auto [a, b] : g.alignment_edges) {
    ++edge_count[g.component[a]];
    ++degree[a];
    ++degree[b];
  }
  for (std::size_t s = 0; s < g.alignment_sets.size(); ++s) {
    const auto& members = g.alignment_sets[s];
    SetClass c;
    c.has_cycle = edge_count[s] >= static_cast<int>(members.size());
    c.has_fork = std::any_of(members.begin(), members.end(), [&](int v) { return degree[v] >= 3; });
    c.has_internal_conflict =
        std::any_of(g.internal_conflicts.begin(), g.internal_conflicts.end(),
                    [&](const InternalConflict& ic) { return g.component[ic.a] == static_cast<int>(s); });
    if (!c.has_internal_conflict)
      c.shape = SetShape::NoInternalConflict;
    else if (!c.has_cycle)
      c.shape = SetShape::Acyclic;
    else if (!c.has_fork)
      c.shape = SetShape::PureCycle;
    else
      c.shape = SetShape::Other;
    out[s] = c;
  }
  return out;
}

Instance induced_instance(const Instance& inst, const std::vector<int>& message_indices) {
  std::vector<int> msgs = message_indices;
  std::sort(msgs.begin(), msgs.end());
  msgs.erase(std::unique(msgs.begin(), msgs.end()), msgs.end());

  std::set<int> keep_src, keep_dst;
  for (int m : msgs) {
    keep_src.insert(inst.messages[m].source);
    for (int d : inst.messages[m].destinations) keep_dst.insert(d);
  }
  std::map<int, int> src_map, dst_map;
  for (int s : keep_src) src_map[s] = static_cast<int>(src_map.size());
  for (int d : keep_dst) dst_map[d] = static_cast<int>(dst_map.size());

  Instance out;
  out.kind = inst.kind;
  out.num_sources = static_cast<int>(src_map.size());
  out.num_destinations = static_cast<int>(dst_map.size());
  out.matrix.assign(out.num_destinations, std::vector<std::uint8_t>(out.num_sources, 0));
  for (auto [d, nd] : dst_map)
    for (auto [s, ns] : src_map) out.matrix[nd][ns] = inst.matrix[d][s];
  for (int m : msgs) {
    Message nm;
    nm.id = inst.messages[m].id;
    nm.source = src_map[inst.messages[m].source];
    for (int d : inst.messages[m].destinations) nm.destinations.push_back(dst_map[d]);
    out.messages.push_back(std::move(nm));
  }
  return validate(std::move(out));
}

bool subset_acyclic(const Instance& inst, const std::vector<int>& message_indices) {
  if (message_indices.empty()) return true;
  return unicast_relaxation(induced_instance(inst, message_indices)).has_value();
}

std::string to_dot(const Instance& inst) {
  const StructureGraphs g = build_graphs(inst);
  const DemandGraph dg = demand_graph(inst);
  std::ostringstream os;
  os << "digraph instance {\n";
  os << "  rankdir=LR;\n";
  for (const auto& m : inst.messages)
    os << "  \"" << m.id << "\" [shape=ellipse];\n";
  for (int d = 0; d < inst.num_destinations; ++d)
    os << "  \"D" << d + 1 << "\" [shape=box];\n";
  os << "  // alignment graph (solid, undirected)\n";
  for (auto [a, b] : g.alignment_edges)
    os << "  \"" << inst.messages[a].id << "\" -> \"" << inst.messages[b].id
       << "\" [dir=none, style=solid];\n";
  os << "  // conflict graph (dashed, interferer -> victim shown as victim <- interferer)\n";
  for (auto [victim, interferer] : g.conflict_edges)
    os << "  \"" << inst.messages[interferer].id << "\" -> \"" << inst.messages[victim].id
       << "\" [style=dashed, color=red];\n";
  os << "  // demand graph (directed bipartite)\n";
  for (auto [m, d] : dg.demand_edges)
    os << "  \"" << inst.messages[m].id << "\" -> \"D" << d + 1 << "\";\n";
  for (auto [d, m] : dg.antidote_edges)
    os << "  \"D" << d + 1 << "\" -> \"" << inst.messages[m].id << "\" [color=blue];\n";
  os << "}\n";
  return os.str();
}

}  // namespace timkit
