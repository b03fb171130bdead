// Copyright (c) 2026 timkit contributors
// SPDX-License-Identifier: Apache-2.0

#include "timkit/baselines.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>

#include "timkit/graphs.hpp"
#include "timkit/lp.hpp"

namespace timkit {

namespace {

Rat schedule_symmetric_rate(const Instance& inst, const Schedule& s) {
  Rat total = 0;
  for (const auto& c : s.columns) total += c.weight * c.cost;
  Rat sym;
  bool first = true;
  for (int m = 0; m < inst.message_count(); ++m) {
    Rat cover = 0;
    for (const auto& c : s.columns)
      if (std::binary_search(c.members.begin(), c.members.end(), m)) cover += c.weight;
    Rat r = total == 0 ? Rat(0) : Rat(cover / total);
    if (first || r < sym) {
      sym = r;
      first = false;
    }
  }
  return first ? Rat(0) : sym;
}

void finish(const Instance& inst, Schedule& s) {
  Rat total = 0;
  for (auto& c : s.columns) {
    std::sort(c.members.begin(), c.members.end());
    total += c.weight * c.cost;
  }
  s.total = total;
  s.symmetric_rate = schedule_symmetric_rate(inst, s);
}

}  // namespace

std::vector<std::vector<bool>> conflict_adjacency(const Instance& inst) {
  const StructureGraphs g = build_graphs(inst);
  std::vector<std::vector<bool>> adj(inst.message_count(),
                                     std::vector<bool>(inst.message_count(), false));
  for (auto [victim, interferer] : g.conflict_edges) {
    adj[victim][interferer] = true;
    adj[interferer][victim] = true;
  }
  return adj;
}

int multicast_cost(const Instance& inst, const std::vector<int>& part) {
  std::vector<bool> in(inst.message_count(), false);
  for (int m : part) in[m] = true;
  int worst = 0;
  for (int d = 0; d < inst.num_destinations; ++d) {
    for (int w : inst.demands(d)) {
      if (!in[w]) continue;
      int seen = 0;
      for (int m = 0; m < inst.message_count(); ++m)
        if (in[m] && m != w && inst.hears(d, inst.messages[m].source)) ++seen;
      worst = std::max(worst, seen);
    }
  }
  return worst + 1;
}

ExactOrthogonal exact_orthogonal(const Instance& inst, int limit) {
  const int k = inst.message_count();
  if (k > limit) fail("LimitsExceeded", "exact orthogonal cover limited to K <= " + std::to_string(limit));
  const auto adj = conflict_adjacency(inst);

  // dp over message subsets: fewest independent-set parts covering the mask.
  std::map<std::uint32_t, std::pair<int, std::uint32_t>> memo;  // mask -> (parts, first part)
  auto independent_with = [&](int v, std::uint32_t part) {
    for (int u = 0; u < k; ++u)
      if ((part >> u & 1u) && adj[v][u]) return false;
    return true;
  };
  auto solve = [&](auto&& self, std::uint32_t mask) -> int {
    if (mask == 0) return 0;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second.first;
    const int low = std::countr_zero(mask);
    int best = k + 1;
    std::uint32_t best_part = 0;
    // Enumerate independent subsets of `mask` containing the lowest vertex,
    // extending in increasing vertex order, keeping only maximal ones.
    auto expand = [&](auto&& inner, std::uint32_t part, int from) -> void {
      bool extended = false;
      for (int v = from; v < k; ++v) {
        if (!(mask >> v & 1u) || (part >> v & 1u)) continue;
        if (independent_with(v, part)) {
          extended = true;
          inner(inner, part | (1u << v), v + 1);
        }
      }
      if (!extended) {
        // Maximal within mask (vertices below `from` were either taken or
        // conflict with the current part by construction order); re-check.
        for (int v = 0; v < k; ++v)
          if ((mask >> v & 1u) && !(part >> v & 1u) && independent_with(v, part)) return;
        const int sub = self(self, mask & ~part) + 1;
        if (sub < best) {
          best = sub;
          best_part = part;
        }
      }
    };
    expand(expand, 1u << low, 0);
    memo[mask] = {best, best_part};
    return best;
  };
  const std::uint32_t full = k == 32 ? ~0u : (1u << k) - 1;
  const int parts = solve(solve, full);

  ExactOrthogonal out;
  out.parts = parts;
  out.rate = rat(1, parts);
  out.schedule.kind = "orthogonal";
  std::uint32_t mask = full;
  while (mask) {
    const std::uint32_t part = memo.at(mask).second;
    ScheduleColumn col;
    for (int v = 0; v < k; ++v)
      if (part >> v & 1u) col.members.push_back(v);
    col.weight = 1;
    col.cost = 1;
    out.schedule.columns.push_back(std::move(col));
    mask &= ~part;
  }
  finish(inst, out.schedule);
  return out;
}

RateSchedule fractional_orthogonal(const Instance& inst, int limit) {
  const int k = inst.message_count();
  if (k > limit)
    fail("LimitsExceeded", "fractional orthogonal LP limited to K <= " + std::to_string(limit));
  const auto adj = conflict_adjacency(inst);
  const auto sets = maximal_independent_sets(k, adj);
  std::vector<CoverColumn> columns;
  for (const auto& s : sets) columns.push_back({s, Rat(1)});
  const CoverSolution sol = solve_fractional_cover(k, columns);

  RateSchedule out;
  out.rate = 1 / sol.objective;
  out.schedule.kind = "orthogonal";
  for (auto [idx, w] : sol.weights) out.schedule.columns.push_back({sets[idx], w, 1});
  finish(inst, out.schedule);
  return out;
}

RateSchedule partition_multicast_exact(const Instance& inst, int limit) {
  const int k = inst.message_count();
  if (k > limit)
    fail("LimitsExceeded", "exact partition multicast limited to K <= " + std::to_string(limit));

  // Per-destination mask of received messages, for fast subset costs.
  std::vector<std::uint32_t> heard(inst.num_destinations, 0);
  for (int d = 0; d < inst.num_destinations; ++d)
    for (int m = 0; m < k; ++m)
      if (inst.hears(d, inst.messages[m].source)) heard[d] |= 1u << m;
  std::vector<std::pair<int, int>> demand_pairs;  // (destination, message)
  for (int d = 0; d < inst.num_destinations; ++d)
    for (int w : inst.demands(d)) demand_pairs.push_back({d, w});

  const std::uint32_t full = (1u << k) - 1;
  std::vector<int> cost(full + 1, 0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    int worst = 0;
    for (auto [d, w] : demand_pairs)
      if (s >> w & 1u) worst = std::max(worst, std::popcount(heard[d] & s & ~(1u << w)));
    cost[s] = worst + 1;
  }
  std::vector<int> dp(full + 1, 0);
  std::vector<std::uint32_t> choice(full + 1, 0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const std::uint32_t low = mask & (~mask + 1);
    int best = INT32_MAX;
    std::uint32_t best_part = 0;
    // Iterate submasks of mask containing the lowest bit.
    for (std::uint32_t sub = mask;; sub = (sub - 1) & mask) {
      if (sub & low) {
        const int v = cost[sub] + dp[mask & ~sub];
        if (v < best) {
          best = v;
          best_part = sub;
        }
      }
      if (sub == 0) break;
    }
    dp[mask] = best;
    choice[mask] = best_part;
  }

  RateSchedule out;
  out.rate = rat(1, dp[full]);
  out.schedule.kind = "partition_multicast";
  std::uint32_t mask = full;
  while (mask) {
    const std::uint32_t part = choice[mask];
    ScheduleColumn col;
    for (int v = 0; v < k; ++v)
      if (part >> v & 1u) col.members.push_back(v);
    col.weight = 1;
    col.cost = cost[part];
    out.schedule.columns.push_back(std::move(col));
    mask &= ~part;
  }
  finish(inst, out.schedule);
  return out;
}

RateSchedule fractional_partition_multicast(const Instance& inst, int limit) {
  const int k = inst.message_count();
  if (k > limit)
    fail("LimitsExceeded", "fractional partition multicast limited to K <= " + std::to_string(limit));
  std::vector<CoverColumn> columns;
  std::vector<std::vector<int>> member_lists;
  const std::uint32_t full = (1u << k) - 1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    std::vector<int> members;
    for (int v = 0; v < k; ++v)
      if (s >> v & 1u) members.push_back(v);
    columns.push_back({members, Rat(multicast_cost(inst, members))});
    member_lists.push_back(std::move(members));
  }
  const CoverSolution sol = solve_fractional_cover(k, columns);

  RateSchedule out;
  out.rate = 1 / sol.objective;
  out.schedule.kind = "partition_multicast";
  for (auto [idx, w] : sol.weights)
    out.schedule.columns.push_back(
        {member_lists[idx], w, static_cast<int>(columns[idx].cost.get_num().get_si())});
  finish(inst, out.schedule);
  return out;
}

GreedyMulticast greedy_partition_multicast(const Instance& inst) {
  const StructureGraphs g = build_graphs(inst);
  if (g.min_conflict_distance)
    fail("NotHalfRateFeasible", "greedy partition multicast needs an instance without internal conflicts");
  const int k = inst.message_count();
  int bound = 1;
  while (bound * (bound + 1) / 2 < k) ++bound;

  std::vector<std::vector<int>> sets = g.alignment_sets;
  std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });

  GreedyMulticast out;
  out.slot_bound = bound;
  out.schedule.kind = "greedy_pm";
  int t = 1;
  std::size_t idx = 0;
  while (idx < sets.size() && static_cast<int>(sets[idx].size()) >= bound - t + 1) {
    out.schedule.columns.push_back({sets[idx], Rat(1), 1});
    ++idx;
    ++t;
  }
  std::vector<int> leftover;
  for (; idx < sets.size(); ++idx)
    leftover.insert(leftover.end(), sets[idx].begin(), sets[idx].end());
  if (!leftover.empty()) {
    std::sort(leftover.begin(), leftover.end());
    out.schedule.columns.push_back({leftover, Rat(1), bound - t + 1});
  }
  finish(inst, out.schedule);
  Rat slots = out.schedule.total;
  out.slots = static_cast<int>(slots.get_num().get_si());
  validate_schedule(inst, out.schedule);
  return out;
}

namespace {

// The set-pair matrix: messages keyed by (own alignment set, alignment set of
// the interference their destination receives); interference-free demands go
// one column to the right of the diagonal.
struct SetPairMatrix {
  int m = 0;
  std::vector<std::vector<std::vector<int>>> cell;  // [row][col] -> messages
};

SetPairMatrix build_set_pair_matrix(const Instance& inst, const StructureGraphs& g) {
  SetPairMatrix out;
  out.m = static_cast<int>(g.alignment_sets.size());
  out.cell.assign(out.m, std::vector<std::vector<int>>(out.m));
  for (int w = 0; w < inst.message_count(); ++w) {
    const int d = inst.messages[w].destinations.front();
    int interference_set = -1;
    for (int x = 0; x < inst.message_count() && interference_set < 0; ++x)
      if (x != w && inst.hears(d, inst.messages[x].source)) interference_set = g.component[x];
    const int row = g.component[w];
    const int col = interference_set >= 0 ? interference_set : (row + 1) % out.m;
    out.cell[row][col].push_back(w);
  }
  return out;
}

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::uint64_t v = 1;
  for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
  return v;
}

// All floor(m/2)-subsets of {0..m-1} in lexicographic order.
std::vector<std::vector<int>> index_choices(int m) {
  const int r = m / 2;
  std::vector<std::vector<int>> out;
  std::vector<int> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    out.push_back(idx);
    int i = r - 1;
    while (i >= 0 && idx[i] == m - r + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<int> slot_from_choice(const SetPairMatrix& mm, const std::vector<int>& rows_kept) {
  std::vector<bool> kept(mm.m, false);
  for (int r : rows_kept) kept[r] = true;
  std::vector<int> slot;
  for (int i : rows_kept)
    for (int j = 0; j < mm.m; ++j)
      if (!kept[j])
        slot.insert(slot.end(), mm.cell[i][j].begin(), mm.cell[i][j].end());
  std::sort(slot.begin(), slot.end());
  return slot;
}

void require_unicast_no_internal(const Instance& inst, const StructureGraphs& g,
                                 const std::string& who) {
  if (!inst.is_unicast()) fail("NotApplicable", who + " requires a multiple unicast instance");
  if (g.min_conflict_distance)
    fail("NotApplicable", who + " requires an instance without internal conflicts");
}

}  // namespace

Schedule m_matrix_schedule(const Instance& inst) {
  const StructureGraphs g = build_graphs(inst);
  require_unicast_no_internal(inst, g, "the set-pair fractional schedule");

  Schedule out;
  out.kind = "m_matrix";
  const int m = static_cast<int>(g.alignment_sets.size());
  if (m < 2) {
    // A single alignment set without internal conflicts has no conflicts at
    // all: one slot serves everything.
    std::vector<int> all(inst.message_count());
    std::iota(all.begin(), all.end(), 0);
    out.columns.push_back({all, Rat(1), 1});
    finish(inst, out);
    return out;
  }

  const SetPairMatrix mm = build_set_pair_matrix(inst, g);
  const std::uint64_t slots = binomial(m, m / 2);
  const Rat rate = rat(static_cast<long>(m / 2) * (m - m / 2), static_cast<long>(m) * (m - 1));
  if (slots <= 1000) {
    for (const auto& choice : index_choices(m))
      out.columns.push_back({slot_from_choice(mm, choice), Rat(1), 1});
    finish(inst, out);
    if (out.symmetric_rate != rate)
      fail("InternalError", "set-pair schedule rate mismatch: " + rat_str(out.symmetric_rate) +
                                " vs " + rat_str(rate));
  } else {
    out.explicit_slots = false;
    out.total = Rat(static_cast<long>(slots));
    out.symmetric_rate = rate;
  }
  return out;
}

RateSchedule iterated_orthogonal(const Instance& inst) {
  const StructureGraphs g0 = build_graphs(inst);
  require_unicast_no_internal(inst, g0, "iterated orthogonal scheduling");
  const int k = inst.message_count();
  if (k > 22) fail("LimitsExceeded", "iterated orthogonal limited to K <= 22");

  std::vector<int> remaining(k);
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<std::vector<int>> rounds;  // chosen independent sets, original indices
  while (!remaining.empty()) {
    const Instance sub = induced_instance(inst, remaining);
    const StructureGraphs g = build_graphs(sub);
    const SetPairMatrix mm = build_set_pair_matrix(sub, g);
    std::vector<int> best;
    if (mm.m < 2) {
      best.resize(sub.message_count());
      std::iota(best.begin(), best.end(), 0);
    } else {
      for (const auto& choice : index_choices(mm.m)) {
        auto slot = slot_from_choice(mm, choice);
        if (slot.size() > best.size()) best = std::move(slot);
      }
    }
    std::vector<int> original;
    for (int v : best) original.push_back(remaining[v]);
    // Induced instances preserve message order, so sub index v maps back via
    // position in `remaining`.
    rounds.push_back(original);
    std::vector<int> next;
    for (int v : remaining)
      if (!std::count(original.begin(), original.end(), v)) next.push_back(v);
    remaining = std::move(next);
  }

  // Optimize the switchover: n greedy rounds, then one straggler per use.
  int best_n = 0;
  int best_total = k;  // n = 0: everything one at a time
  int served = 0;
  for (int n = 1; n <= static_cast<int>(rounds.size()); ++n) {
    served += static_cast<int>(rounds[n - 1].size());
    const int total = n + (k - served);
    if (total < best_total) {
      best_total = total;
      best_n = n;
    }
  }

  RateSchedule out;
  out.schedule.kind = "iterated";
  std::vector<bool> done(k, false);
  for (int n = 0; n < best_n; ++n) {
    out.schedule.columns.push_back({rounds[n], Rat(1), 1});
    for (int v : rounds[n]) done[v] = true;
  }
  for (int v = 0; v < k; ++v)
    if (!done[v]) out.schedule.columns.push_back({{v}, Rat(1), 1});
  finish(inst, out.schedule);
  out.rate = out.schedule.symmetric_rate;
  validate_schedule(inst, out.schedule);
  return out;
}

void validate_schedule(const Instance& inst, const Schedule& s) {
  if (!s.explicit_slots) return;  // symbolic form carries no slot list
  const auto adj = conflict_adjacency(inst);
  const int k = inst.message_count();
  std::vector<bool> covered(k, false);
  Rat total = 0;
  for (const auto& col : s.columns) {
    if (col.weight <= 0) fail("BadSchedule", "non-positive column weight");
    if (col.cost < 1) fail("BadSchedule", "column cost must be at least one use");
    total += col.weight * col.cost;
    for (std::size_t i = 0; i < col.members.size(); ++i) {
      covered[col.members[i]] = true;
      if (col.cost == 1)
        for (std::size_t j = i + 1; j < col.members.size(); ++j)
          if (adj[col.members[i]][col.members[j]])
            fail("BadSchedule", "orthogonal column contains the conflicting pair (" +
                                    inst.messages[col.members[i]].id + ", " +
                                    inst.messages[col.members[j]].id + ")");
    }
    if (col.cost > 1) {
      const int need = multicast_cost(inst, col.members);
      if (need > col.cost)
        fail("BadSchedule", "multicast column of cost " + std::to_string(col.cost) +
                                " needs at least " + std::to_string(need) + " uses");
    } else if (!col.members.empty() && multicast_cost(inst, col.members) > 1) {
      fail("BadSchedule", "orthogonal column sees in-column interference");
    }
  }
  for (int m = 0; m < k; ++m) {
    if (!covered[m]) fail("BadSchedule", "message '" + inst.messages[m].id + "' is never scheduled");
    Rat weight = 0;
    for (const auto& col : s.columns)
      if (std::binary_search(col.members.begin(), col.members.end(), m)) weight += col.weight;
    if (weight < 1)
      fail("BadSchedule", "message '" + inst.messages[m].id + "' gets total weight below one");
  }
  if (total != s.total) fail("BadSchedule", "recorded total does not match columns");
  if (schedule_symmetric_rate(inst, s) != s.symmetric_rate)
    fail("BadSchedule", "recorded symmetric rate does not match columns");
}

LinearScheme schedule_to_scheme(const Instance& inst, const Schedule& s, std::uint64_t seed) {
  if (!s.explicit_slots) fail("BadSchedule", "symbolic schedule cannot be concretized");
  validate_schedule(inst, s);

  // Scale weights to integers.
  mpz_class denom_lcm = 1;
  for (const auto& col : s.columns) {
    mpz_class den = col.weight.get_den();
    mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), den.get_mpz_t());
  }
  std::vector<long> occurrences;
  long n = 0;
  bool any_multicast = false;
  for (const auto& col : s.columns) {
    Rat scaled = col.weight * Rat(denom_lcm);
    occurrences.push_back(scaled.get_num().get_si());
    n += occurrences.back() * col.cost;
    any_multicast = any_multicast || col.cost > 1;
  }

  std::uint32_t p = any_multicast ? kDefaultPrime : 2;
  Rng rng(seed);
  for (int attempt = 0; attempt < 12; ++attempt) {
    if (attempt == 4 || attempt == 8) p = static_cast<std::uint32_t>(next_prime(2ull * p));
    LinearScheme scheme;
    scheme.block_length = static_cast<int>(n);
    scheme.p = p;
    scheme.seed = seed;
    std::vector<FMatrix> pre(inst.message_count(), FMatrix(static_cast<int>(n), 0, p));
    long offset = 0;
    for (std::size_t ci = 0; ci < s.columns.size(); ++ci) {
      const auto& col = s.columns[ci];
      for (long occ = 0; occ < occurrences[ci]; ++occ) {
        for (int m : col.members) {
          FMatrix column(static_cast<int>(n), 1, p);
          if (col.cost == 1) {
            column.set(static_cast<int>(offset), 0, 1);
          } else {
            for (int r = 0; r < col.cost; ++r)
              column.set(static_cast<int>(offset) + r, 0,
                         static_cast<std::uint32_t>(rng.below(p)));
          }
          pre[m] = hstack(pre[m], column);
        }
        offset += col.cost;
      }
    }
    for (int m = 0; m < inst.message_count(); ++m) scheme.precoders[inst.messages[m].id] = pre[m];
    std::string why;
    if (!derive_combiners(inst, pre, static_cast<int>(n), p, &scheme.combiners, &why)) continue;
    const VerifyResult vr = verify(inst, scheme);
    if (vr.ok && vr.symmetric_rate == s.symmetric_rate) return scheme;
  }
  fail("SynthesisExhausted", "could not realize the schedule as a verified scheme");
}

}  // namespace timkit
