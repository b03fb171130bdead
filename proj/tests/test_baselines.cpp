// Copyright (c) 2026 timkit contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "timkit/baselines.hpp"
#include "timkit/generators.hpp"
#include "timkit/graphs.hpp"

using namespace timkit;

namespace {

Instance conflict_free(int k) {
  Instance i;
  i.kind = Kind::TIM;
  i.num_sources = k;
  i.num_destinations = k;
  i.matrix.assign(k, std::vector<std::uint8_t>(k, 0));
  for (int v = 0; v < k; ++v) {
    i.matrix[v][v] = 1;
    i.messages.push_back({"W" + std::to_string(v + 1), v, {v}});
  }
  return validate(std::move(i));
}

int coverage(const Schedule& s, int message) {
  int n = 0;
  for (const auto& c : s.columns)
    if (std::binary_search(c.members.begin(), c.members.end(), message)) ++n;
  return n;
}

}  // namespace

TEST_CASE("exact orthogonal cover") {
  CHECK(exact_orthogonal(gen_cycle_unicast(3)).rate == rat(1, 3));
  CHECK(exact_orthogonal(fixture("four_cell").instance).rate == rat(1, 4));
  CHECK(exact_orthogonal(conflict_free(4)).rate == 1);
  CHECK_THROWS_AS(exact_orthogonal(conflict_free(4), 3), Error);
  validate_schedule(fixture("four_cell").instance,
                    exact_orthogonal(fixture("four_cell").instance).schedule);
}

TEST_CASE("fractional orthogonal: pentagon optimum with five columns") {
  const auto r = fractional_orthogonal(gen_pentagon_family(5));
  CHECK(r.rate == rat(2, 5));
  CHECK(r.schedule.columns.size() == 5);
  for (const auto& c : r.schedule.columns) {
    CHECK(c.weight == rat(1, 2));
    CHECK(c.members.size() == 2);
  }
  validate_schedule(gen_pentagon_family(5), r.schedule);
}

TEST_CASE("fractional orthogonal: complete conflict graphs and the trivial case") {
  for (int k = 3; k <= 5; ++k)
    CHECK(fractional_orthogonal(gen_pairwise_conflict_groupcast(k)).rate == rat(1, k));
  CHECK(fractional_orthogonal(conflict_free(1)).rate == 1);
}

TEST_CASE("set-pair fractional schedule") {
  const Instance& f5 = fixture("fig5").instance;
  const Schedule s = m_matrix_schedule(f5);
  CHECK(s.symmetric_rate == rat(3, 10));
  CHECK(s.columns.size() == 10);
  for (int m = 0; m < f5.message_count(); ++m) CHECK(coverage(s, m) == 3);
  validate_schedule(f5, s);

  CHECK(m_matrix_schedule(gen_aligned_cliques_unicast(2)).symmetric_rate == rat(1, 2));
  // Even set counts: rate 1/4 + 1/(4(m-1)).
  CHECK(m_matrix_schedule(gen_aligned_cliques_unicast(4)).symmetric_rate == rat(1, 3));
  CHECK(m_matrix_schedule(gen_aligned_cliques_unicast(6)).symmetric_rate ==
        rat(1, 4) + rat(1, 20));
  // Odd: 1/4 + 1/(4m).
  CHECK(m_matrix_schedule(gen_aligned_cliques_unicast(5)).symmetric_rate ==
        rat(1, 4) + rat(1, 20));
}

TEST_CASE("set-pair schedule rate is at least a quarter on half-rate-feasible unicasts") {
  for (int m = 2; m <= 6; ++m) {
    const Rat r = m_matrix_schedule(gen_aligned_cliques_unicast(m)).symmetric_rate;
    CHECK(r >= rat(1, 4));
  }
  CHECK(m_matrix_schedule(fixture("birk_kol").instance).symmetric_rate >= rat(1, 4));
}

TEST_CASE("partition multicast, exact and fractional") {
  const Instance c3 = gen_cycle_unicast(3);
  const auto pm = partition_multicast_exact(c3);
  CHECK(pm.rate == rat(1, 2));
  REQUIRE(pm.schedule.columns.size() == 1);
  CHECK(pm.schedule.columns[0].cost == 2);
  validate_schedule(c3, pm.schedule);

  CHECK(partition_multicast_exact(conflict_free(4)).rate == 1);
  CHECK(fractional_partition_multicast(gen_aligned_cliques_groupcast(4)).rate <= rat(1, 4));
}

TEST_CASE("baseline dominance invariants") {
  for (const char* name : {"birk_kol", "fig13", "pentagon", "four_cell", "fig12_b"}) {
    const Instance& inst = fixture(name).instance;
    const Rat eo = exact_orthogonal(inst).rate;
    const Rat fo = fractional_orthogonal(inst).rate;
    const Rat pm = partition_multicast_exact(inst).rate;
    const Rat fpm = fractional_partition_multicast(inst).rate;
    CHECK(fo >= eo);
    CHECK(fpm >= fo);
    CHECK(fpm >= pm);
    CHECK(pm >= eo);
  }
}

TEST_CASE("greedy partition multicast") {
  const auto bk = greedy_partition_multicast(fixture("birk_kol").instance);
  CHECK(bk.slot_bound == 3);
  CHECK(bk.slots <= 3);
  CHECK(bk.schedule.symmetric_rate >= rat(1, 3));

  const auto one = greedy_partition_multicast(conflict_free(1));
  CHECK(one.slots == 1);
  CHECK(one.schedule.symmetric_rate == 1);

  const auto g4 = greedy_partition_multicast(gen_aligned_cliques_groupcast(4));
  CHECK(g4.slot_bound == 5);
  CHECK(g4.slots <= 5);

  CHECK_THROWS_AS(greedy_partition_multicast(gen_pentagon_family(5)), Error);
}

TEST_CASE("iterated orthogonal") {
  const auto r1 = iterated_orthogonal(conflict_free(1));
  CHECK(r1.rate == 1);
  const auto bk = iterated_orthogonal(fixture("birk_kol").instance);
  CHECK(bk.rate >= rat(1, 3));  // log_{4/3} 5 + 1 ~= 6.6, so anything >= 1/7 qualifies
  const auto w4 = iterated_orthogonal(gen_aligned_cliques_unicast(4));
  const double bound = 1.0 / (std::log(12.0) / std::log(4.0 / 3.0) + 1.0);
  CHECK(w4.rate.get_d() >= bound - 1e-12);
}

TEST_CASE("schedules concretize into verified schemes") {
  struct Case {
    Instance inst;
    Schedule sched;
  };
  std::vector<Case> cases;
  cases.push_back({gen_pentagon_family(5), fractional_orthogonal(gen_pentagon_family(5)).schedule});
  cases.push_back({gen_cycle_unicast(3), partition_multicast_exact(gen_cycle_unicast(3)).schedule});
  cases.push_back({fixture("fig5").instance, m_matrix_schedule(fixture("fig5").instance)});
  cases.push_back(
      {fixture("four_cell").instance, exact_orthogonal(fixture("four_cell").instance).schedule});
  cases.push_back(
      {fixture("birk_kol").instance, greedy_partition_multicast(fixture("birk_kol").instance).schedule});
  for (const auto& c : cases) {
    const LinearScheme scheme = schedule_to_scheme(c.inst, c.sched);
    const VerifyResult vr = verify(c.inst, scheme);
    CHECK(vr.ok);
    CHECK(vr.symmetric_rate == c.sched.symmetric_rate);
  }
}
