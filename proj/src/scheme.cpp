// Copyright (c) 2026 timkit contributors
// SPDX-License-Identifier: Apache-2.0

#include "timkit/scheme.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace timkit {

using nlohmann::json;

Rat LinearScheme::rate(const std::string& id) const {
  auto it = precoders.find(id);
  if (it == precoders.end()) fail("UnknownMessage", "no precoder for '" + id + "'");
  return rat(it->second.cols(), block_length);
}

Rat LinearScheme::symmetric_rate() const {
  Rat best;
  bool first = true;
  for (const auto& [id, v] : precoders) {
    Rat r = rat(v.cols(), block_length);
    if (first || r < best) {
      best = r;
      first = false;
    }
  }
  return first ? Rat(0) : best;
}

VerifyResult verify(const Instance& inst, const LinearScheme& scheme) {
  const int n = scheme.block_length;
  if (n <= 0) fail("DimensionMismatch", "scheme block length must be positive");
  VerifyResult vr;

  for (const auto& m : inst.messages) {
    auto it = scheme.precoders.find(m.id);
    if (it == scheme.precoders.end())
      fail("DimensionMismatch", "missing precoder for message '" + m.id + "'");
    const FMatrix& v = it->second;
    if (v.mod() != scheme.p) fail("FieldMismatch", "precoder '" + m.id + "' uses a different modulus");
    if (v.rows() != n || v.cols() < 1)
      fail("DimensionMismatch", "precoder '" + m.id + "' must be N x L with L >= 1");
  }

  for (int d = 0; d < inst.num_destinations; ++d) {
    for (int w : inst.demands(d)) {
      const Message& msg = inst.messages[w];
      auto it = scheme.combiners.find({d, msg.id});
      if (it == scheme.combiners.end())
        fail("DimensionMismatch",
             "missing combiner for (D" + std::to_string(d + 1) + ", " + msg.id + ")");
      const FMatrix& u = it->second;
      const FMatrix& v = scheme.precoders.at(msg.id);
      if (u.mod() != scheme.p) fail("FieldMismatch", "combiner modulus mismatch at " + msg.id);
      if (u.rows() != v.cols() || u.cols() != n)
        fail("DimensionMismatch",
             "combiner for (D" + std::to_string(d + 1) + ", " + msg.id + ") must be L x N");

      // Zero-forcing: kill every other received precoder.
      for (int m = 0; m < inst.message_count(); ++m) {
        if (m == w) continue;
        if (!inst.hears(d, inst.messages[m].source)) continue;
        if (!mat_mul(u, scheme.precoders.at(inst.messages[m].id)).is_zero())
          vr.failures.push_back({d, msg.id, "zero_forcing",
                                 "interference from '" + inst.messages[m].id + "' leaks at D" +
                                     std::to_string(d + 1)});
      }
      // Invertibility of the desired response.
      if (det(mat_mul(u, v)) == 0)
        vr.failures.push_back(
            {d, msg.id, "invertibility",
             "combined desired response is singular at D" + std::to_string(d + 1)});
    }
  }

  for (const auto& m : inst.messages) vr.rates[m.id] = scheme.rate(m.id);
  Rat sym;
  bool first = true;
  for (const auto& [id, r] : vr.rates) {
    if (first || r < sym) {
      sym = r;
      first = false;
    }
  }
  vr.symmetric_rate = sym;
  vr.ok = vr.failures.empty();
  return vr;
}

// Row selection from the left null space of the received interference; the
// invertibility condition then reduces to a rank check. Returns false (with
// a reason) when the rank is short, which callers treat as a synthesis retry.
bool derive_combiners(const Instance& inst, const std::vector<FMatrix>& precoders, int n,
                      std::uint32_t p, std::map<std::pair<int, std::string>, FMatrix>* out,
                      std::string* why) {
  out->clear();
  for (int d = 0; d < inst.num_destinations; ++d) {
    for (int w : inst.demands(d)) {
      FMatrix interference(n, 0, p);
      for (int m = 0; m < inst.message_count(); ++m) {
        if (m == w) continue;
        if (!inst.hears(d, inst.messages[m].source)) continue;
        interference = hstack(interference, precoders[m]);
      }
      const FMatrix basis =
          interference.cols() == 0 ? FMatrix::identity(n, p) : left_null_basis(interference);
      const FMatrix& v = precoders[w];
      const int want = v.cols();
      // Select rows of `basis` whose images under v stay independent.
      FMatrix image = mat_mul(basis, v);
      std::vector<int> chosen;
      FMatrix chosen_rows(0, want, p);
      for (int r = 0; r < image.rows() && static_cast<int>(chosen.size()) < want; ++r) {
        FMatrix row(1, want, p);
        for (int c = 0; c < want; ++c) row.set(0, c, image.at(r, c));
        FMatrix trial = vstack(chosen_rows, row);
        if (rank(trial) == static_cast<int>(chosen.size()) + 1) {
          chosen.push_back(r);
          chosen_rows = trial;
        }
      }
      if (static_cast<int>(chosen.size()) < want) {
        if (why)
          *why = "desired signal of '" + inst.messages[w].id + "' is not separable at D" +
                 std::to_string(d + 1);
        return false;
      }
      FMatrix u(want, n, p);
      for (int i = 0; i < want; ++i)
        for (int c = 0; c < n; ++c) u.set(i, c, basis.at(chosen[i], c));
      (*out)[{d, inst.messages[w].id}] = u;
    }
  }
  return true;
}

std::vector<std::vector<int>> merged_alignment_classes(const Instance& inst,
                                                       const StructureGraphs& g,
                                                       MergePolicy policy) {
  (void)inst;
  const int s = static_cast<int>(g.alignment_sets.size());
  // Order sets largest-first, ties by smallest member.
  std::vector<int> order(s);
  for (int i = 0; i < s; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (g.alignment_sets[a].size() != g.alignment_sets[b].size())
      return g.alignment_sets[a].size() > g.alignment_sets[b].size();
    return g.alignment_sets[a].front() < g.alignment_sets[b].front();
  });

  std::vector<std::vector<bool>> set_conflict(s, std::vector<bool>(s, false));
  for (auto [a, b] : g.conflict_edges) {
    set_conflict[g.component[a]][g.component[b]] = true;
    set_conflict[g.component[b]][g.component[a]] = true;
  }

  std::vector<std::vector<int>> class_sets;  // indices into alignment_sets
  for (int idx : order) {
    int placed = -1;
    if (policy == MergePolicy::Greedy) {
      for (std::size_t c = 0; c < class_sets.size() && placed < 0; ++c) {
        bool clash = false;
        for (int t : class_sets[c]) clash = clash || set_conflict[idx][t];
        if (!clash) placed = static_cast<int>(c);
      }
    }
    if (placed >= 0)
      class_sets[placed].push_back(idx);
    else
      class_sets.push_back({idx});
  }

  std::vector<std::vector<int>> classes;
  for (const auto& cs : class_sets) {
    std::vector<int> members;
    for (int t : cs)
      members.insert(members.end(), g.alignment_sets[t].begin(), g.alignment_sets[t].end());
    std::sort(members.begin(), members.end());
    classes.push_back(std::move(members));
  }
  std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return classes;
}

namespace {

// --- small polynomial arithmetic over GF(p), used to build field-extension
// subspace families for symbol extensions ---

using Poly = std::vector<std::uint32_t>;  // coefficients, low degree first

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  const int dm = static_cast<int>(m.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= dm) {
    const std::uint32_t lead = a.back();
    if (lead != 0) {
      const int shift = static_cast<int>(a.size()) - 1 - dm;
      const std::uint32_t f = f_mul(lead, f_inv(m.back(), p), p);
      for (int i = 0; i <= dm; ++i)
        a[shift + i] = f_sub(a[shift + i], f_mul(f, m[i], p), p);
    }
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

bool poly_irreducible(const Poly& f, std::uint32_t p) {
  const int deg = static_cast<int>(f.size()) - 1;
  // Trial division by every monic polynomial of degree 1..deg/2.
  std::vector<Poly> divisors;
  for (int d = 1; d <= deg / 2; ++d) {
    std::vector<std::uint32_t> c(d, 0);
    for (;;) {
      Poly g(c.begin(), c.end());
      g.push_back(1);  // monic
      if (poly_mod(f, g, p).empty()) return false;
      int i = 0;
      while (i < d && ++c[i] == p) c[i++] = 0;
      if (i == d) break;
    }
  }
  return true;
}

Poly find_irreducible(std::uint32_t p, int e) {
  std::vector<std::uint32_t> c(e, 0);
  for (;;) {
    Poly f(c.begin(), c.end());
    f.push_back(1);
    if (f[0] != 0 && poly_irreducible(f, p)) return f;
    int i = 0;
    while (i < e && ++c[i] == p) c[i++] = 0;
    if (i == e) fail("FieldTooSmall", "no irreducible polynomial found (unexpected)");
  }
}

// Pairwise non-intersecting e-dimensional subspaces of GF(p)^(2e): the
// classic spread [I; P] over all field elements P (matrix polynomials in the
// companion matrix of an irreducible polynomial), plus [0; I].
std::vector<FMatrix> subspace_family(std::uint32_t p, int e, int count) {
  std::vector<FMatrix> out;
  if (e == 1) {
    // Lines of GF(p)^2 in a fixed order: e1, e2, then [a, 1] for a = 1..p-1.
    FMatrix e1(2, 1, p, {1, 0}), e2(2, 1, p, {0, 1});
    out.push_back(e1);
    out.push_back(e2);
    for (std::uint32_t a = 1; a < p && static_cast<int>(out.size()) < count; ++a)
      out.push_back(FMatrix(2, 1, p, {a, 1}));
  } else {
    const Poly f = find_irreducible(p, e);
    FMatrix companion(e, e, p);
    for (int i = 1; i < e; ++i) companion.set(i, i - 1, 1);
    for (int i = 0; i < e; ++i) companion.set(i, e - 1, f_sub(0, f[i], p));
    std::vector<FMatrix> powers{FMatrix::identity(e, p)};
    for (int i = 1; i < e; ++i) powers.push_back(mat_mul(powers.back(), companion));

    std::uint64_t field_size = 1;
    for (int i = 0; i < e; ++i) field_size *= p;
    for (std::uint64_t j = 0; j < field_size && static_cast<int>(out.size()) < count; ++j) {
      FMatrix slope(e, e, p);
      std::uint64_t digits = j;
      for (int i = 0; i < e; ++i) {
        const std::uint32_t di = static_cast<std::uint32_t>(digits % p);
        digits /= p;
        if (di != 0) {
          FMatrix scaled = powers[i];
          for (int r = 0; r < e; ++r)
            for (int cc = 0; cc < e; ++cc) scaled.set(r, cc, f_mul(scaled.at(r, cc), di, p));
          slope = mat_add(slope, scaled);
        }
      }
      out.push_back(vstack(FMatrix::identity(e, p), slope));
    }
    if (static_cast<int>(out.size()) < count)
      out.push_back(vstack(FMatrix(e, e, p), FMatrix::identity(e, p)));
  }
  if (static_cast<int>(out.size()) < count)
    fail("FieldTooSmall", "not enough pairwise independent subspaces");
  out.resize(count);
  return out;
}

}  // namespace

LinearScheme build_half_rate(const Instance& inst, const HalfRateOptions& opts) {
  const StructureGraphs g = build_graphs(inst);
  if (g.min_conflict_distance)
    fail("NotHalfRateFeasible", "instance has internal conflicts (minimum distance " +
                                    std::to_string(*g.min_conflict_distance) + ")");
  const auto classes = merged_alignment_classes(inst, g, opts.merge);
  const int c = static_cast<int>(classes.size());

  std::uint32_t p = opts.p;
  int ext = 1;
  if (p == 0) {
    // Smallest prime with p + 1 pairwise independent lines over two uses.
    p = 2;
    while (static_cast<int>(p) + 1 < c) p = static_cast<std::uint32_t>(next_prime(p + 1));
  } else {
    if (!is_prime(p)) fail("InvalidModulus", "requested modulus is not prime");
    std::uint64_t subspaces = p + 1;  // p^ext + 1
    std::uint64_t power = p;
    while (subspaces < static_cast<std::uint64_t>(c)) {
      if (!opts.allow_extensions)
        fail("FieldTooSmall", "GF(" + std::to_string(p) + ") offers only " +
                                  std::to_string(p + 1) + " pairwise independent lines for " +
                                  std::to_string(c) + " classes");
      ++ext;
      power *= p;
      subspaces = power + 1;
    }
  }
  const int n = 2 * ext;
  const auto family = subspace_family(p, ext, c);

  LinearScheme scheme;
  scheme.block_length = n;
  scheme.p = p;
  scheme.seed = opts.seed;
  std::vector<FMatrix> by_index(inst.message_count());
  for (int ci = 0; ci < c; ++ci)
    for (int m : classes[ci]) {
      by_index[m] = family[ci];
      scheme.precoders[inst.messages[m].id] = family[ci];
    }
  std::string why;
  if (!derive_combiners(inst, by_index, n, p, &scheme.combiners, &why))
    fail("SynthesisExhausted", "half-rate combiner derivation failed: " + why);
  const VerifyResult vr = verify(inst, scheme);
  if (!vr.ok || vr.symmetric_rate != rat(1, 2))
    fail("SynthesisExhausted", "half-rate construction failed verification (internal error)");
  return scheme;
}

bool tree_cycle_applicable(const Instance& inst, const StructureGraphs& g) {
  if (!g.min_conflict_distance) return false;
  for (const auto& c : classify_alignment_sets(inst, g))
    if (c.has_cycle && c.has_fork) return false;
  return true;
}

namespace {

// True when some four messages form an acyclic chain (the only configuration
// under the no-cycle-or-no-fork precondition where the rate drops to 1/4).
bool has_acyclic_four(const Instance& inst) {
  const int k = inst.message_count();
  std::vector<int> subset(4);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      for (int c = b + 1; c < k; ++c)
        for (int d = c + 1; d < k; ++d) {
          subset = {a, b, c, d};
          if (subset_acyclic(inst, subset)) return true;
        }
  return false;
}

// Ordered walk around a fork-free cycle component, starting at the smallest
// member and moving toward its smaller neighbor.
std::vector<int> cycle_walk(const std::vector<int>& members, const StructureGraphs& g) {
  std::vector<int> walk{members.front()};
  std::vector<int> nbrs;
  for (int m : members)
    if (m != walk[0] && g.adjacent_alignment(walk[0], m)) nbrs.push_back(m);
  std::sort(nbrs.begin(), nbrs.end());
  int prev = walk[0];
  int cur = nbrs.front();
  while (cur != walk[0]) {
    walk.push_back(cur);
    int next = -1;
    for (int m : members)
      if (m != prev && m != cur && g.adjacent_alignment(cur, m)) next = m;
    prev = cur;
    cur = next;
  }
  return walk;
}

std::vector<FMatrix> synthesize_precoders(const Instance& inst, const StructureGraphs& g,
                                          const std::vector<SetClass>& classes, int delta,
                                          bool psi_four, int n, std::uint32_t p, Rng& rng) {
  const int k = inst.message_count();
  std::vector<FMatrix> v(k);
  if (psi_four) {
    // One fresh column per message; every destination resolves at most three
    // interferers plus its demand inside four dimensions.
    for (int m = 0; m < k; ++m) v[m] = random_matrix(n, 1, p, rng);
    return v;
  }

  for (std::size_t s = 0; s < g.alignment_sets.size(); ++s) {
    const auto& members = g.alignment_sets[s];
    const SetClass& cls = classes[s];
    if (!cls.has_internal_conflict) {
      const FMatrix shared = random_matrix(n, delta, p, rng);
      for (int m : members) v[m] = shared;
    } else if (!cls.has_cycle) {
      // Tree: root takes a fresh block; every child inherits a random
      // (delta-1)-dimensional slice of its parent plus one fresh column, so
      // overlap decays by one dimension per alignment hop.
      const int root = members.front();
      v[root] = random_matrix(n, delta, p, rng);
      std::vector<int> stack{root};
      std::set<int> visited{root};
      while (!stack.empty()) {
        const int cur = stack.front();
        stack.erase(stack.begin());
        std::vector<int> children;
        for (int m : members)
          if (!visited.count(m) && g.adjacent_alignment(cur, m)) children.push_back(m);
        std::sort(children.begin(), children.end());
        for (int child : children) {
          visited.insert(child);
          if (delta == 1) {
            v[child] = random_matrix(n, 1, p, rng);
          } else {
            const FMatrix inherited = mat_mul(v[cur], random_matrix(delta, delta - 1, p, rng));
            v[child] = hstack(inherited, random_matrix(n, 1, p, rng));
          }
          stack.push_back(child);
        }
      }
    } else {
      // Fork-free cycle.
      const int len = static_cast<int>(members.size());
      if (len == 3) {
        // Triangle special cases (delta == 1 whenever a triangle carries an
        // internal conflict).
        const int a = members[0], b = members[1], c = members[2];
        bool observed_whole = false;
        for (int d = 0; d < inst.num_destinations && !observed_whole; ++d)
          for (int w : inst.demands(d)) {
            if (w == a || w == b || w == c) continue;
            if (inst.hears(d, inst.messages[a].source) && inst.hears(d, inst.messages[b].source) &&
                inst.hears(d, inst.messages[c].source))
              observed_whole = true;
          }
        if (!observed_whole) {
          for (int m : members) v[m] = random_matrix(n, 1, p, rng);
        } else {
          // A pair that jointly interferes with the third member's demand is
          // collapsed onto one vector; otherwise all three share a random
          // two-dimensional plane.
          int px = -1, py = -1, pz = -1;
          for (int zi = 0; zi < 3 && px < 0; ++zi) {
            const int z = members[zi];
            const int x = members[(zi + 1) % 3], y = members[(zi + 2) % 3];
            for (int d = 0; d < inst.num_destinations && px < 0; ++d) {
              if (!inst.desired_at(d, z)) continue;
              if (inst.hears(d, inst.messages[x].source) && inst.hears(d, inst.messages[y].source)) {
                px = x;
                py = y;
                pz = z;
              }
            }
          }
          if (px >= 0) {
            const FMatrix pair_vec = random_matrix(n, 1, p, rng);
            v[px] = pair_vec;
            v[py] = pair_vec;
            v[pz] = random_matrix(n, 1, p, rng);
          } else {
            const FMatrix plane = random_matrix(n, 2, p, rng);
            for (int m : members) v[m] = mat_mul(plane, random_matrix(2, 1, p, rng));
          }
        }
      } else {
        // Sliding windows of width delta over one fresh vector per node,
        // assigned cyclically along the walk.
        const std::vector<int> walk = cycle_walk(members, g);
        std::vector<FMatrix> fresh;
        for (int i = 0; i < len; ++i) fresh.push_back(random_matrix(n, 1, p, rng));
        for (int i = 0; i < len; ++i) {
          FMatrix block = fresh[i];
          for (int o = 1; o < delta; ++o) block = hstack(block, fresh[(i + o) % len]);
          v[walk[i]] = block;
        }
      }
    }
  }
  return v;
}

}  // namespace

LinearScheme build_tree_cycle(const Instance& inst, std::uint64_t seed) {
  const StructureGraphs g = build_graphs(inst);
  if (!g.min_conflict_distance)
    fail("TheoremNotApplicable",
         "no internal conflicts: the half-rate construction applies instead");
  const auto classes = classify_alignment_sets(inst, g);
  for (const auto& c : classes)
    if (c.has_cycle && c.has_fork)
      fail("TheoremNotApplicable", "an alignment set has both a cycle and a fork");

  const int delta = *g.min_conflict_distance;
  const bool psi_four = has_acyclic_four(inst);
  const int n = psi_four ? 4 : 2 * delta + 1;
  const Rat target = psi_four ? rat(1, 4) : rat(delta, 2 * delta + 1);

  Rng rng(seed);
  std::uint32_t p = kDefaultPrime;
  std::string last = "no attempt";
  for (int escalation = 0; escalation < 5; ++escalation) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      LinearScheme scheme;
      scheme.block_length = n;
      scheme.p = p;
      scheme.seed = seed;
      const auto v = synthesize_precoders(inst, g, classes, delta, psi_four, n, p, rng);
      for (int m = 0; m < inst.message_count(); ++m) scheme.precoders[inst.messages[m].id] = v[m];
      std::string why;
      if (!derive_combiners(inst, v, n, p, &scheme.combiners, &why)) {
        last = why;
        continue;
      }
      const VerifyResult vr = verify(inst, scheme);
      if (!vr.ok) {
        last = vr.failures.front().detail;
        continue;
      }
      if (vr.symmetric_rate != target)
        fail("SynthesisExhausted", "construction rate " + rat_str(vr.symmetric_rate) +
                                       " differs from target " + rat_str(target));
      return scheme;
    }
    p = static_cast<std::uint32_t>(next_prime(2ull * p));
  }
  fail("SynthesisExhausted", "alignment synthesis failed after retries: " + last);
}

LinearScheme dualize_scheme(const Instance& inst, const LinearScheme& scheme) {
  if (!inst.is_unicast()) fail("NotUnicast", "scheme duality needs a multiple unicast instance");
  const VerifyResult vr = verify(inst, scheme);
  if (!vr.ok)
    fail("SourceSchemeInvalid", "input scheme fails verification: " + vr.failures.front().detail);

  LinearScheme out;
  out.block_length = scheme.block_length;
  out.p = scheme.p;
  out.seed = scheme.seed;
  for (const auto& m : inst.messages) {
    const int dest = m.destinations.front();
    const FMatrix& u = scheme.combiners.at({dest, m.id});
    out.precoders[m.id] = transpose(u);
    out.combiners[{m.source, m.id}] = transpose(scheme.precoders.at(m.id));
  }
  return out;
}

OracleResult oracle_best_linear(const Instance& inst, const OracleLimits& limits) {
  const int k = inst.message_count();
  if (k > limits.k_max)
    fail("LimitsExceeded", "oracle handles at most " + std::to_string(limits.k_max) + " messages");

  struct Constraint {
    int demand;                  // message index that must stay clear
    std::vector<int> interferers;
  };
  std::vector<Constraint> constraints;
  for (int d = 0; d < inst.num_destinations; ++d)
    for (int w : inst.demands(d)) {
      Constraint c{w, {}};
      for (int m = 0; m < k; ++m)
        if (m != w && inst.hears(d, inst.messages[m].source)) c.interferers.push_back(m);
      if (!c.interferers.empty()) constraints.push_back(std::move(c));
    }
  std::vector<std::vector<int>> involving(k);
  for (int ci = 0; ci < static_cast<int>(constraints.size()); ++ci) {
    involving[constraints[ci].demand].push_back(ci);
    for (int m : constraints[ci].interferers) involving[m].push_back(ci);
  }

  for (int n = 1; n <= limits.n_max; ++n) {
    for (std::uint32_t p : limits.primes) {
      // Canonical line representatives: first non-zero coordinate is 1.
      std::vector<FMatrix> lines;
      for (int lead = 0; lead < n; ++lead) {
        std::uint64_t tails = 1;
        for (int i = lead + 1; i < n; ++i) tails *= p;
        for (std::uint64_t t = 0; t < tails; ++t) {
          FMatrix v(n, 1, p);
          v.set(lead, 0, 1);
          std::uint64_t digits = t;
          for (int i = lead + 1; i < n; ++i) {
            v.set(i, 0, static_cast<std::uint32_t>(digits % p));
            digits /= p;
          }
          lines.push_back(v);
        }
      }

      std::vector<int> assign(k, -1);
      auto consistent = [&](int just_assigned) {
        for (int ci : involving[just_assigned]) {
          const Constraint& c = constraints[ci];
          if (assign[c.demand] < 0) continue;
          FMatrix span(n, 0, p);
          for (int m : c.interferers)
            if (assign[m] >= 0) span = hstack(span, lines[assign[m]]);
          if (span.cols() > 0 && !independent_of(span, lines[assign[c.demand]])) return false;
        }
        return true;
      };
      auto dfs = [&](auto&& self, int m) -> bool {
        if (m == k) return true;
        for (int l = 0; l < static_cast<int>(lines.size()); ++l) {
          assign[m] = l;
          if (consistent(m) && self(self, m + 1)) return true;
        }
        assign[m] = -1;
        return false;
      };
      if (dfs(dfs, 0)) {
        OracleResult r;
        r.feasible = true;
        r.block_length = n;
        r.p = p;
        r.rate = rat(1, n);
        for (int m = 0; m < k; ++m) r.lines[inst.messages[m].id] = lines[assign[m]];
        return r;
      }
    }
  }
  return {};
}

json scheme_to_json(const LinearScheme& scheme) {
  auto matrix_json = [](const FMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
      rows.push_back(row);
    }
    return rows;
  };
  json pre = json::object();
  for (const auto& [id, v] : scheme.precoders) pre[id] = matrix_json(v);
  json comb = json::object();
  for (const auto& [key, u] : scheme.combiners)
    comb["D" + std::to_string(key.first + 1) + "/" + key.second] = matrix_json(u);
  return json{{"N", scheme.block_length},
              {"p", scheme.p},
              {"seed", scheme.seed},
              {"precoders", pre},
              {"combiners", comb}};
}

LinearScheme scheme_from_json(const json& j) {
  if (!j.is_object()) fail("BadScheme", "scheme must be a JSON object");
  for (const char* k : {"N", "p", "seed", "precoders", "combiners"})
    if (!j.contains(k)) fail("BadScheme", std::string("missing field '") + k + "'");
  LinearScheme s;
  s.block_length = j.at("N").get<int>();
  s.p = j.at("p").get<std::uint32_t>();
  s.seed = j.at("seed").get<std::uint64_t>();
  auto parse_matrix = [&](const json& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows.at(0).size());
    FMatrix m(r, c, s.p);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows.at(i).size()) != c) fail("BadScheme", "ragged matrix rows");
      for (int jj = 0; jj < c; ++jj) m.set(i, jj, rows.at(i).at(jj).get<std::uint32_t>());
    }
    return m;
  };
  for (auto it = j.at("precoders").begin(); it != j.at("precoders").end(); ++it)
    s.precoders[it.key()] = parse_matrix(it.value());
  for (auto it = j.at("combiners").begin(); it != j.at("combiners").end(); ++it) {
    const std::string key = it.key();
    const auto slash = key.find('/');
    if (slash == std::string::npos || key.empty() || key[0] != 'D')
      fail("BadScheme", "combiner keys must look like 'D1/W1'");
    const int dest = std::stoi(key.substr(1, slash - 1)) - 1;
    s.combiners[{dest, key.substr(slash + 1)}] = parse_matrix(it.value());
  }
  return s;
}

}  // namespace timkit
