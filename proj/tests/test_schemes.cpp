// Copyright (c) 2026 timkit contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <set>

#include "timkit/generators.hpp"
#include "timkit/graphs.hpp"
#include "timkit/scheme.hpp"

using namespace timkit;

namespace {

// The classic two-use code on the five-user crossed network.
LinearScheme birk_kol_hand_scheme(const Instance& bk, std::uint32_t w2_first, std::uint32_t w2_second) {
  LinearScheme s;
  s.block_length = 2;
  s.p = 2;
  const FMatrix v1(2, 1, 2, {1, 0});
  const FMatrix v2(2, 1, 2, {0, 1});
  const FMatrix v3(2, 1, 2, {w2_first, w2_second});
  s.precoders = {{"W1", v1}, {"W5", v1}, {"W3", v2}, {"W4", v2}, {"W2", v3}};
  std::vector<FMatrix> by_index;
  for (const auto& m : bk.messages) by_index.push_back(s.precoders.at(m.id));
  std::string why;
  derive_combiners(bk, by_index, 2, 2, &s.combiners, &why);
  return s;
}

// Coefficient of message `id` in transmission slot `slot` (L == 1 schemes).
std::uint32_t slot_coeff(const LinearScheme& s, const std::string& id, int slot) {
  return s.precoders.at(id).at(slot, 0);
}

}  // namespace

TEST_CASE("verifier accepts the hand-built two-use code and reads off its slot sums") {
  const Instance& bk = fixture("birk_kol").instance;
  const LinearScheme s = birk_kol_hand_scheme(bk, 1, 1);
  const VerifyResult vr = verify(bk, s);
  CHECK(vr.ok);
  CHECK(vr.symmetric_rate == rat(1, 2));
  // First use carries x1+x2+x5, second x2+x3+x4.
  std::set<std::string> first, second;
  for (const auto& m : bk.messages) {
    if (slot_coeff(s, m.id, 0)) first.insert(m.id);
    if (slot_coeff(s, m.id, 1)) second.insert(m.id);
  }
  CHECK(first == std::set<std::string>{"W1", "W2", "W5"});
  CHECK(second == std::set<std::string>{"W2", "W3", "W4"});
}

TEST_CASE("verifier flags a collinear demand") {
  const Instance& bk = fixture("birk_kol").instance;
  // W2 along [1,0] lands on the same line as W5 at D5. The only combiner
  // there that still annihilates the interference is [0,1], and against it
  // the desired response is the 1x1 zero matrix: det = 0 by hand.
  LinearScheme s = birk_kol_hand_scheme(bk, 1, 0);
  LinearScheme good = birk_kol_hand_scheme(bk, 1, 1);
  s.combiners = good.combiners;
  s.combiners[{4, "W5"}] = FMatrix(1, 2, 2, {0, 1});
  const VerifyResult vr = verify(bk, s);
  CHECK_FALSE(vr.ok);
  REQUIRE(vr.failures.size() == 1);
  CHECK(vr.failures[0].destination == 4);
  CHECK(vr.failures[0].kind == "invertibility");
}

TEST_CASE("verifier on the trivial interference-free link") {
  Instance i;
  i.kind = Kind::TIM;
  i.num_sources = 1;
  i.num_destinations = 1;
  i.matrix = {{1}};
  i.messages = {{"W1", 0, {0}}};
  const Instance inst = validate(std::move(i));
  LinearScheme s;
  s.block_length = 1;
  s.p = 2;
  s.precoders = {{"W1", FMatrix::identity(1, 2)}};
  s.combiners[{0, "W1"}] = FMatrix::identity(1, 2);
  const VerifyResult vr = verify(inst, s);
  CHECK(vr.ok);
  CHECK(vr.symmetric_rate == 1);
}

TEST_CASE("half-rate builder reproduces the classic two-use code") {
  const Instance& bk = fixture("birk_kol").instance;
  const LinearScheme s = build_half_rate(bk);
  CHECK(s.p == 2);
  CHECK(s.block_length == 2);
  CHECK(verify(bk, s).ok);
  CHECK(s.symmetric_rate() == rat(1, 2));
  std::set<std::string> first, second;
  for (const auto& m : bk.messages) {
    if (slot_coeff(s, m.id, 0)) first.insert(m.id);
    if (slot_coeff(s, m.id, 1)) second.insert(m.id);
  }
  CHECK(first == std::set<std::string>{"W1", "W2", "W5"});
  CHECK(second == std::set<std::string>{"W2", "W3", "W4"});
}

TEST_CASE("half-rate merging on the ten-user network") {
  const Instance& f5 = fixture("fig5").instance;
  const StructureGraphs g = build_graphs(f5);

  const auto unmerged = merged_alignment_classes(f5, g, MergePolicy::None);
  CHECK(unmerged.size() == 5);

  // Maximal greedy merging folds {W9} into {W1,W5,W10} and {W2,W7} into
  // {W4,W6,W8}; only {W3} conflicts with everything else.
  const auto merged = merged_alignment_classes(f5, g, MergePolicy::Greedy);
  CHECK(merged.size() == 3);
  auto class_of = [&](const std::string& id) {
    for (const auto& c : merged)
      for (int m : c)
        if (f5.messages[m].id == id) return c;
    return std::vector<int>{};
  };
  CHECK(class_of("W9") == class_of("W1"));
  CHECK(class_of("W2") == class_of("W4"));

  // Without merging, five classes need five pairwise independent lines: the
  // automatic choice lands on GF(5) over two uses.
  const LinearScheme wide = build_half_rate(f5);
  CHECK(wide.p == 5);
  CHECK(wide.block_length == 2);
  CHECK(verify(f5, wide).ok);

  // Merged, three lines suffice over GF(2).
  const LinearScheme narrow = build_half_rate(f5, {.merge = MergePolicy::Greedy});
  CHECK(narrow.p == 2);
  CHECK(narrow.block_length == 2);
  CHECK(verify(f5, narrow).ok);

  // Pinning GF(2) without merging forces a symbol extension: four uses,
  // two-dimensional pairwise non-intersecting subspaces, rate 2/4.
  const LinearScheme ext = build_half_rate(f5, {.p = 2});
  CHECK(ext.block_length == 4);
  for (const auto& [id, v] : ext.precoders) CHECK(v.cols() == 2);
  const VerifyResult vr = verify(f5, ext);
  CHECK(vr.ok);
  CHECK(vr.symmetric_rate == rat(1, 2));

  CHECK_THROWS_AS(build_half_rate(f5, {.p = 2, .allow_extensions = false}), Error);
  CHECK_THROWS_AS(build_half_rate(gen_pentagon_family(5)), Error);
}

TEST_CASE("tree and cycle synthesis") {
  // Chain structure: seven uses, three streams each.
  const Instance& f8 = fixture("fig8").instance;
  const LinearScheme s8 = build_tree_cycle(f8);
  CHECK(s8.block_length == 7);
  for (const auto& [id, v] : s8.precoders) CHECK(v.cols() == 3);
  const VerifyResult v8 = verify(f8, s8);
  CHECK(v8.ok);
  CHECK(v8.symmetric_rate == rat(3, 7));

  // Pentagon: five uses, two streams, cyclic windows.
  const Instance pent = gen_pentagon_family(5);
  const LinearScheme sp = build_tree_cycle(pent);
  CHECK(sp.block_length == 5);
  const VerifyResult vp = verify(pent, sp);
  CHECK(vp.ok);
  CHECK(vp.symmetric_rate == rat(2, 5));

  // Dual of the forked nine-user network: its sets are a path plus
  // singletons, so synthesis runs directly (five uses, two streams).
  const Instance& f11 = fixture("fig11a").instance;
  const LinearScheme s11 = build_tree_cycle(f11);
  CHECK(s11.block_length == 5);
  CHECK(verify(f11, s11).symmetric_rate == rat(2, 5));

  // Triangle with a one-hop conflict: three uses, rate 1/3.
  const Instance& b = fixture("fig12_b").instance;
  const LinearScheme sb = build_tree_cycle(b);
  CHECK(sb.block_length == 3);
  CHECK(verify(b, sb).symmetric_rate == rat(1, 3));

  // Four-message acyclic chain: one-symbol multicast over four uses.
  const Instance& a = fixture("fig12_a").instance;
  const LinearScheme sa = build_tree_cycle(a);
  CHECK(sa.block_length == 4);
  CHECK(verify(a, sa).symmetric_rate == rat(1, 4));

  // Not applicable: a set with both cycles and forks, or no conflicts.
  CHECK_THROWS_AS(build_tree_cycle(fixture("fig7").instance), Error);
  CHECK_THROWS_AS(build_tree_cycle(fixture("birk_kol").instance), Error);
}

TEST_CASE("seven-user tree synthesis hits 2/5 and the window overlap law") {
  const Instance& f10 = fixture("fig10").instance;
  const LinearScheme s = build_tree_cycle(f10);
  CHECK(s.block_length == 5);
  const VerifyResult vr = verify(f10, s);
  CHECK(vr.ok);
  CHECK(vr.symmetric_rate == rat(2, 5));

  // Locality: two messages at alignment distance >= 2 (the minimum conflict
  // distance) span disjoint subspaces - the stacked matrix has full rank 4.
  const StructureGraphs g = build_graphs(f10);
  const int delta = *g.min_conflict_distance;
  for (int a = 0; a < f10.message_count(); ++a)
    for (int b = a + 1; b < f10.message_count(); ++b) {
      if (g.component[a] != g.component[b]) continue;
      // BFS distance within the tree component.
      std::vector<int> dist(f10.message_count(), -1);
      std::vector<int> queue{a};
      dist[a] = 0;
      for (std::size_t qi = 0; qi < queue.size(); ++qi)
        for (int w = 0; w < f10.message_count(); ++w)
          if (dist[w] < 0 && g.adjacent_alignment(queue[qi], w)) {
            dist[w] = dist[queue[qi]] + 1;
            queue.push_back(w);
          }
      if (dist[b] >= delta) {
        const FMatrix stacked =
            hstack(s.precoders.at(f10.messages[a].id), s.precoders.at(f10.messages[b].id));
        CHECK(rank(stacked) == 2 * delta);
      }
    }
}

TEST_CASE("a pair sharing a vector: the joint-interference triangle case") {
  // D3 wants W3 and receives sources 1 and 2; D4 wants W4 and receives 1, 2,
  // 3. The triangle {W1,W2,W3} carries a one-hop conflict, and W1, W2 are
  // forced onto a single vector.
  Instance i;
  i.kind = Kind::TIM;
  i.num_sources = 4;
  i.num_destinations = 4;
  i.matrix = {{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 1, 0}, {1, 1, 1, 1}};
  i.messages = {{"W1", 0, {0}}, {"W2", 1, {1}}, {"W3", 2, {2}}, {"W4", 3, {3}}};
  const Instance inst = validate(std::move(i));
  const LinearScheme s = build_tree_cycle(inst);
  CHECK(s.block_length == 3);
  CHECK(s.precoders.at("W1") == s.precoders.at("W2"));
  CHECK(verify(inst, s).symmetric_rate == rat(1, 3));
}

TEST_CASE("synthesis is deterministic in the seed") {
  const Instance& f8 = fixture("fig8").instance;
  CHECK(scheme_to_json(build_tree_cycle(f8, 7)) == scheme_to_json(build_tree_cycle(f8, 7)));
  CHECK(scheme_to_json(build_tree_cycle(f8, 7)) != scheme_to_json(build_tree_cycle(f8, 8)));
  const Instance& bk = fixture("birk_kol").instance;
  CHECK(scheme_to_json(build_half_rate(bk)) == scheme_to_json(build_half_rate(bk)));
}

TEST_CASE("scheme duality") {
  // Route to the forked nine-user network through its dual, then back.
  const Instance& f7 = fixture("fig7").instance;
  const Instance& f11 = fixture("fig11a").instance;
  const LinearScheme on_dual = build_tree_cycle(f11);
  const LinearScheme on_f7 = dualize_scheme(f11, on_dual);
  const VerifyResult v7 = verify(f7, on_f7);
  CHECK(v7.ok);
  CHECK(v7.symmetric_rate == rat(2, 5));

  const LinearScheme back = dualize_scheme(f7, on_f7);
  const VerifyResult v11 = verify(f11, back);
  CHECK(v11.ok);
  CHECK(v11.symmetric_rate == rat(2, 5));

  // Twice more: the double dual verifies on the original with equal rates.
  const LinearScheme twice = dualize_scheme(f11, back);
  CHECK(verify(f7, twice).symmetric_rate == rat(2, 5));

  // The half-rate code transfers too.
  const Instance& bk = fixture("birk_kol").instance;
  const LinearScheme half = build_half_rate(bk);
  const LinearScheme dual_half = dualize_scheme(bk, half);
  const VerifyResult vd = verify(dual(bk), dual_half);
  CHECK(vd.ok);
  CHECK(vd.symmetric_rate == rat(1, 2));

  CHECK_THROWS_AS(dualize_scheme(fixture("fig6_a").instance, half), Error);
}

TEST_CASE("exhaustive line-assignment oracle") {
  // The cyclic-demand member of the same-graph pair: three uses feasible,
  // two impossible.
  const OracleResult b = oracle_best_linear(fixture("fig12_b").instance);
  CHECK(b.feasible);
  CHECK(b.block_length == 3);
  CHECK(b.rate == rat(1, 3));
  OracleLimits two;
  two.n_max = 2;
  CHECK_FALSE(oracle_best_linear(fixture("fig12_b").instance, two).feasible);

  const OracleResult bk = oracle_best_linear(fixture("birk_kol").instance);
  CHECK(bk.block_length == 2);
  CHECK(bk.rate == rat(1, 2));

  const OracleResult c3 = oracle_best_linear(gen_cycle_unicast(3));
  CHECK(c3.block_length == 2);

  const OracleResult a = oracle_best_linear(fixture("fig12_a").instance);
  CHECK(a.rate == rat(1, 4));

  CHECK_THROWS_AS(oracle_best_linear(fixture("fig5").instance), Error);
}

TEST_CASE("scheme json round trip") {
  const LinearScheme s = build_half_rate(fixture("birk_kol").instance);
  const LinearScheme back = scheme_from_json(scheme_to_json(s));
  CHECK(back.block_length == s.block_length);
  CHECK(back.p == s.p);
  CHECK(back.precoders == s.precoders);
  CHECK(back.combiners == s.combiners);
}

TEST_CASE("verifier rejects malformed schemes outright") {
  const Instance& bk = fixture("birk_kol").instance;
  LinearScheme s = build_half_rate(bk);
  LinearScheme wrong_rows = s;
  wrong_rows.precoders["W1"] = FMatrix(3, 1, 2, {1, 0, 0});
  CHECK_THROWS_AS(verify(bk, wrong_rows), Error);
  LinearScheme wrong_field = s;
  wrong_field.precoders["W1"] = FMatrix(2, 1, 3, {1, 0});
  CHECK_THROWS_AS(verify(bk, wrong_field), Error);
  LinearScheme missing = s;
  missing.combiners.erase({0, "W1"});
  CHECK_THROWS_AS(verify(bk, missing), Error);
}
