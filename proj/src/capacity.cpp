// Copyright (c) 2026 timkit contributors
// SPDX-License-Identifier: Apache-2.0

#include "timkit/capacity.hpp"

#include <algorithm>
#include <numeric>

#include "timkit/graphs.hpp"

namespace timkit {

using nlohmann::json;

bool half_rate_feasible(const Instance& inst) {
  return !build_graphs(inst).min_conflict_distance.has_value();
}

Rat slide_upper_bound(const Instance& inst) {
  const StructureGraphs g = build_graphs(inst);
  if (!g.min_conflict_distance)
    fail("HalfRateFeasible", "no internal conflicts: the sliding bound does not apply");
  const int d = *g.min_conflict_distance;
  return rat(d, 2 * d + 1);
}

namespace {

struct PsiSearch {
  const Instance* inst = nullptr;
  int k = 0;
  long budget = 0;
  bool exhausted = false;
  std::vector<int> best;

  void dfs(int next, std::vector<int>& current) {
    if (budget-- <= 0) {
      exhausted = true;
      return;
    }
    if (static_cast<int>(current.size()) > static_cast<int>(best.size())) best = current;
    if (next == k) return;
    if (static_cast<int>(current.size()) + (k - next) <= static_cast<int>(best.size())) return;
    // Include branch first: supersets of a cyclic subset stay cyclic, so a
    // failed acyclicity check prunes the whole branch.
    current.push_back(next);
    if (subset_acyclic(*inst, current)) dfs(next + 1, current);
    current.pop_back();
    if (exhausted) return;
    dfs(next + 1, current);
  }
};

}  // namespace

PsiResult max_acyclic_subset(const Instance& inst, int exact_limit) {
  const int k = inst.message_count();
  PsiResult out;
  // Quick win: the whole message set.
  std::vector<int> all(k);
  std::iota(all.begin(), all.end(), 0);
  if (subset_acyclic(inst, all)) {
    out.psi = k;
    out.witness = all;
    return out;
  }
  PsiSearch search;
  search.inst = &inst;
  search.k = k;
  search.budget = k <= exact_limit ? (1L << 62) : 200000;
  std::vector<int> current;
  search.dfs(0, current);
  out.psi = static_cast<int>(search.best.size());
  out.witness = search.best;
  out.exact = !search.exhausted;
  return out;
}

namespace {

std::string scheme_id(const std::string& name, const LinearScheme& s) {
  return "scheme:" + name + "(N=" + std::to_string(s.block_length) + ",p=" + std::to_string(s.p) +
         ",seed=" + std::to_string(s.seed) + ")";
}

std::string schedule_id(const std::string& name, const Schedule& s) {
  return "schedule:" + name + "(" + rat_str(s.total) + " uses)";
}

// When every alignment set has no cycles or no forks, no acyclic subset can
// exceed four messages, so the exact value comes from a bounded scan.
int psi_bounded_by_four(const Instance& inst) {
  const int k = inst.message_count();
  for (int size = std::min(4, k); size >= 2; --size) {
    std::vector<int> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      if (subset_acyclic(inst, idx)) return size;
      int i = size - 1;
      while (i >= 0 && idx[i] == k - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return 1;
}

}  // namespace

CapacityReport capacity_report(const Instance& inst, const AnalysisOptions& opts) {
  const StructureGraphs g = build_graphs(inst);
  const int k = inst.message_count();

  CapacityReport r;
  r.delta = g.min_conflict_distance;
  r.half_rate_feasible = !g.min_conflict_distance.has_value();

  // No interference at all: every message rides the channel alone.
  if (g.conflict_edges.empty()) {
    Schedule s;
    s.kind = "orthogonal";
    std::vector<int> all(k);
    std::iota(all.begin(), all.end(), 0);
    s.columns.push_back({all, Rat(1), 1});
    s.total = 1;
    s.symmetric_rate = 1;
    r.lower = r.upper = 1;
    r.upper_kind = "trivial_one";
    r.exact = true;
    r.theorem = "no_interference";
    r.certificate = schedule_id("single-slot", s);
    r.schedule = std::move(s);
    r.psi = 1;
    return r;
  }

  // Demand relaxation: success pins the symmetric rate to one message per
  // |messages| uses, certified by plain turn taking.
  if (auto relaxed = unicast_relaxation(inst)) {
    Schedule s;
    s.kind = "orthogonal";
    for (int m = 0; m < k; ++m) s.columns.push_back({{m}, Rat(1), 1});
    s.total = k;
    s.symmetric_rate = rat(1, k);
    r.lower = r.upper = rat(1, k);
    r.upper_kind = "acyclic";
    r.exact = true;
    r.theorem = "acyclic_demand";
    r.certificate = schedule_id("tdma", s);
    r.schedule = std::move(s);
    r.psi = k;  // the full set is acyclic
    return r;
  }

  if (r.half_rate_feasible) {
    LinearScheme scheme = build_half_rate(inst, {.seed = opts.seed});
    r.lower = r.upper = rat(1, 2);
    r.upper_kind = "half_rate_pairwise";
    r.exact = true;
    r.theorem = "half_rate";
    r.certificate = scheme_id("half-rate", scheme);
    r.scheme = std::move(scheme);
    const PsiResult psi = max_acyclic_subset(inst, opts.psi_exact_limit);
    r.psi = psi.psi;
    r.psi_exact = psi.exact;
    return r;
  }

  const Rat slide = slide_upper_bound(inst);

  // Per-set synthesis when every alignment set has no cycles or no forks.
  // That precondition caps acyclic subsets at four messages, so the bound is
  // always exact here.
  if (tree_cycle_applicable(inst, g)) {
    r.psi = psi_bounded_by_four(inst);
    r.psi_exact = true;
    const Rat acyclic_bound = rat(1, r.psi);
    const bool slide_attains = slide <= acyclic_bound;
    LinearScheme scheme = build_tree_cycle(inst, opts.seed);
    r.lower = scheme.symmetric_rate();
    r.upper = slide_attains ? slide : acyclic_bound;
    r.upper_kind = slide_attains ? "slide" : "acyclic";
    r.exact = r.lower == r.upper;
    r.theorem = "tree_cycle";
    r.certificate = scheme_id("tree-cycle", scheme);
    r.scheme = std::move(scheme);
    return r;
  }

  const PsiResult psi = max_acyclic_subset(inst, opts.psi_exact_limit);
  r.psi = psi.psi;
  r.psi_exact = psi.exact;
  const Rat acyclic_bound = rat(1, psi.psi);
  const bool slide_attains = slide <= acyclic_bound;
  const Rat upper = slide_attains ? slide : acyclic_bound;

  // Unicast instances whose dual qualifies: synthesize there, transpose back.
  if (inst.is_unicast()) {
    const Instance d = dual(inst);
    const StructureGraphs dg = build_graphs(d);
    if (tree_cycle_applicable(d, dg)) {
      LinearScheme dual_scheme = build_tree_cycle(d, opts.seed);
      LinearScheme scheme = dualize_scheme(d, dual_scheme);
      const VerifyResult vr = verify(inst, scheme);
      if (!vr.ok) fail("InternalError", "dualized scheme failed verification");
      r.lower = vr.symmetric_rate;
      r.upper = upper;
      r.upper_kind = slide_attains ? "dual_slide" : "acyclic";
      r.exact = r.lower == r.upper && (slide_attains || r.psi_exact);
      r.theorem = "dual_tree_cycle";
      r.certificate = scheme_id("dual-tree-cycle", scheme);
      r.scheme = std::move(scheme);
      return r;
    }
  }

  // No settling branch applies: report the best certified interval.
  r.theorem = "bounds_only";
  r.upper = upper;
  r.upper_kind = slide_attains ? "slide" : "acyclic";
  r.lower = 0;
  r.certificate = "none";

  auto consider_schedule = [&](const char* name, const RateSchedule& rs) {
    if (rs.rate > r.lower) {
      r.lower = rs.rate;
      r.certificate = schedule_id(name, rs.schedule);
      r.schedule = rs.schedule;
      r.scheme.reset();
    }
  };
  if (k <= opts.exact_orthogonal_limit) {
    const ExactOrthogonal eo = exact_orthogonal(inst, opts.exact_orthogonal_limit);
    consider_schedule("exact-tdma", {eo.rate, eo.schedule});
  }
  if (k <= opts.frac_orthogonal_limit)
    consider_schedule("frac-tdma", fractional_orthogonal(inst, opts.frac_orthogonal_limit));
  if (k <= opts.exact_multicast_limit)
    consider_schedule("pm", partition_multicast_exact(inst, opts.exact_multicast_limit));
  if (k <= opts.frac_multicast_limit)
    consider_schedule("frac-pm", fractional_partition_multicast(inst, opts.frac_multicast_limit));
  if (opts.certificate) {
    const VerifyResult vr = verify(inst, *opts.certificate);
    if (vr.ok && vr.symmetric_rate > r.lower) {
      r.lower = vr.symmetric_rate;
      r.certificate = scheme_id("provided", *opts.certificate);
      r.scheme = *opts.certificate;
      r.schedule.reset();
    }
  }
  r.exact = r.lower == r.upper && (slide_attains || r.psi_exact);
  return r;
}

json report_to_json(const CapacityReport& r) {
  json lower = rat_to_json(r.lower);
  lower["certificate"] = r.certificate;
  json upper = rat_to_json(r.upper);
  upper["kind"] = r.upper_kind;
  json out{{"lower", lower},
           {"upper", upper},
           {"exact", r.exact},
           {"psi", r.psi},
           {"psi_exact", r.psi_exact},
           {"half_rate_feasible", r.half_rate_feasible},
           {"theorem", r.theorem}};
  if (r.delta)
    out["delta"] = *r.delta;
  else
    out["delta"] = "infinity";
  return out;
}

}  // namespace timkit
