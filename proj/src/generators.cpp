// Copyright (c) 2026 timkit contributors
// SPDX-License-Identifier: Apache-2.0

#include "timkit/generators.hpp"

#include <algorithm>

namespace timkit {

using nlohmann::json;

namespace {

Instance make_unicast(int k, std::vector<std::vector<std::uint8_t>> matrix) {
  Instance inst;
  inst.kind = Kind::TIM;
  inst.num_sources = k;
  inst.num_destinations = static_cast<int>(matrix.size());
  inst.matrix = std::move(matrix);
  for (int i = 0; i < k; ++i)
    inst.messages.push_back({"W" + std::to_string(i + 1), i, {i}});
  return validate(std::move(inst));
}

std::vector<std::vector<std::uint8_t>> eye(int d, int s) {
  std::vector<std::vector<std::uint8_t>> m(d, std::vector<std::uint8_t>(s, 0));
  for (int i = 0; i < std::min(d, s); ++i) m[i][i] = 1;
  return m;
}

}  // namespace

Instance gen_cycle_unicast(int k) {
  if (k < 2) fail("InvalidArgument", "cycle unicast needs K >= 2");
  auto m = eye(k, k);
  for (int i = 0; i < k; ++i) m[i][(i + 1) % k] = 1;
  return make_unicast(k, std::move(m));
}

Instance gen_pentagon_family(int k) {
  if (k < 5) fail("InvalidArgument", "pentagon family needs K >= 5");
  if (k % 2 == 0) fail("KEven", "even K splits the alignment ring in two");
  auto m = eye(k, k);
  for (int i = 0; i < k; ++i) {
    m[i][(i + 1) % k] = 1;
    m[i][(i + k - 1) % k] = 1;
  }
  return make_unicast(k, std::move(m));
}

Instance gen_aligned_cliques_unicast(int m) {
  if (m < 2) fail("InvalidArgument", "aligned cliques need m >= 2");
  // Message (i, j), i != j, lives in set i; its destination receives its own
  // source plus every source of set j.
  const int k = m * (m - 1);
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j) cells.push_back({i, j});
  auto mat = eye(k, k);
  auto index_of = [&](int i, int j) {
    return static_cast<int>(std::find(cells.begin(), cells.end(), std::make_pair(i, j)) -
                            cells.begin());
  };
  for (int w = 0; w < k; ++w) {
    const int j = cells[w].second;
    for (int jj = 0; jj < m; ++jj)
      if (jj != j) mat[w][index_of(j, jj)] = 1;
  }
  return make_unicast(k, std::move(mat));
}

Instance gen_pairwise_conflict_groupcast(int k) {
  if (k < 2) fail("InvalidArgument", "pairwise conflict groupcast needs K >= 2");
  Instance inst;
  inst.kind = Kind::TIM;
  inst.num_sources = k;
  inst.num_destinations = k * (k - 1);
  inst.matrix.assign(inst.num_destinations, std::vector<std::uint8_t>(k, 0));
  for (int i = 0; i < k; ++i) inst.messages.push_back({"W" + std::to_string(i + 1), i, {}});
  int d = 0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      inst.matrix[d][i] = 1;
      inst.matrix[d][j] = 1;
      inst.messages[i].destinations.push_back(d);
      ++d;
    }
  return validate(std::move(inst));
}

Instance gen_aligned_cliques_groupcast(int m) {
  if (m < 2) fail("InvalidArgument", "aligned cliques need m >= 2");
  const int k = m * (m - 1);
  // Message w = (set i, slot t) with t = 0..m-2; destination (w, other set j).
  Instance inst;
  inst.kind = Kind::TIM;
  inst.num_sources = k;
  inst.num_destinations = k * (m - 1);
  inst.matrix.assign(inst.num_destinations, std::vector<std::uint8_t>(k, 0));
  for (int w = 0; w < k; ++w) inst.messages.push_back({"W" + std::to_string(w + 1), w, {}});
  auto set_of = [&](int w) { return w / (m - 1); };
  int d = 0;
  for (int w = 0; w < k; ++w) {
    for (int j = 0; j < m; ++j) {
      if (j == set_of(w)) continue;
      inst.matrix[d][w] = 1;
      for (int x = 0; x < k; ++x)
        if (set_of(x) == j) inst.matrix[d][x] = 1;
      inst.messages[w].destinations.push_back(d);
      ++d;
    }
  }
  return validate(std::move(inst));
}

Instance gen_linear_cellular(int n, bool wraparound) {
  if (n < 3) fail("InvalidArgument", "cellular chains need n >= 3 cells");
  Instance inst;
  inst.kind = Kind::TIM;
  inst.num_sources = n;
  // Messages: l{i} to the left-border user of cell i, r{i} to the right one.
  for (int i = 0; i < n; ++i) {
    inst.messages.push_back({"l" + std::to_string(i + 1), i, {}});
    inst.messages.push_back({"r" + std::to_string(i + 1), i, {}});
  }
  auto msg = [&](char side, int cell) {
    return inst.find_message(std::string(1, side) + std::to_string(cell + 1));
  };
  std::vector<std::vector<std::uint8_t>> matrix;
  auto add_dest = [&](std::vector<int> cells_heard, std::vector<int> demands) {
    std::vector<std::uint8_t> row(n, 0);
    for (int c : cells_heard) row[c] = 1;
    const int d = static_cast<int>(matrix.size());
    matrix.push_back(std::move(row));
    for (int w : demands) inst.messages[w].destinations.push_back(d);
  };
  if (wraparound) {
    // Border (i, i+1): the two users there merge into one destination that
    // wants r{i} and l{i+1} and receives both adjacent cells.
    for (int i = 0; i < n; ++i)
      add_dest({i, (i + 1) % n}, {msg('r', i), msg('l', (i + 1) % n)});
  } else {
    add_dest({0}, {msg('l', 0)});  // outer edge of the first cell
    for (int i = 0; i + 1 < n; ++i) add_dest({i, i + 1}, {msg('r', i), msg('l', i + 1)});
    add_dest({n - 1}, {msg('r', n - 1)});  // outer edge of the last cell
  }
  inst.num_destinations = static_cast<int>(matrix.size());
  inst.matrix = std::move(matrix);
  return validate(std::move(inst));
}

namespace {

Instance birk_kol_instance() {
  return make_unicast(5, {{1, 0, 1, 1, 0},
                          {0, 1, 1, 1, 0},
                          {1, 0, 1, 0, 1},
                          {1, 0, 0, 1, 1},
                          {0, 1, 0, 0, 1}});
}

// Ten-message network whose alignment sets are {1,5,10}, {2,7}, {3},
// {4,6,8}, {9} with no internal conflicts.
Instance ten_user_instance() {
  auto m = eye(10, 10);
  auto hear = [&](int d, std::initializer_list<int> ss) {
    for (int s : ss) m[d - 1][s - 1] = 1;
  };
  hear(2, {1, 5});
  hear(4, {5, 10});
  hear(8, {1, 10});
  hear(10, {2, 7});
  hear(3, {2, 7});
  hear(5, {4, 6});
  hear(9, {6, 8});
  hear(1, {3});
  hear(7, {3});
  hear(6, {3});
  return make_unicast(10, std::move(m));
}

// Five-message groupcast with an acyclic demand graph; destination 2 wants
// {W1, W2, W4} and receives everything.
Instance groupcast_acyclic_instance() {
  Instance inst;
  inst.kind = Kind::TIM;
  inst.num_sources = 5;
  inst.num_destinations = 4;
  inst.matrix = {{1, 1, 1, 1, 0}, {1, 1, 1, 1, 1}, {1, 1, 1, 0, 1}, {1, 1, 0, 1, 1}};
  inst.messages = {{"W1", 0, {0, 1}},
                   {"W2", 1, {1}},
                   {"W3", 2, {2}},
                   {"W4", 3, {1}},
                   {"W5", 4, {2, 3}}};
  return validate(std::move(inst));
}

// Same network plus one destination that wants W5 but cannot receive source
// 1: the demand graph picks up a cycle, yet the relaxation still succeeds.
Instance groupcast_cyclic_instance() {
  Instance inst = groupcast_acyclic_instance();
  inst.num_destinations = 5;
  inst.matrix.push_back({0, 1, 1, 1, 1});
  inst.messages[4].destinations.push_back(4);
  return validate(std::move(inst));
}

// The relaxed five-unicast shape shared by both groupcast variants.
Instance groupcast_relaxed_instance() {
  Instance inst;
  inst.kind = Kind::TIM;
  inst.num_sources = 5;
  inst.num_destinations = 2;
  inst.matrix = {{1, 1, 1, 1, 1}, {1, 1, 1, 0, 1}};
  inst.messages = {{"W1", 0, {0}}, {"W2", 1, {0}}, {"W3", 2, {1}}, {"W4", 3, {0}}, {"W5", 4, {1}}};
  return validate(std::move(inst));
}

// Nine-unicast network whose big alignment set carries both a cycle and a
// fork (sets {1,3,4,6,7}, {2,9}, {5}, {8}); minimum conflict distance 2.
Instance nine_user_forked_instance() {
  auto m = eye(9, 9);
  auto hear = [&](int d, std::initializer_list<int> ss) {
    for (int s : ss) m[d - 1][s - 1] = 1;
  };
  hear(2, {1, 4, 7});
  hear(4, {3, 6});
  hear(6, {2, 9});
  hear(8, {6, 7});
  return make_unicast(9, std::move(m));
}

// Nine-unicast chain variant: same sets but the big one is the path
// 4-1-7-6-3; minimum conflict distance 3.
Instance nine_user_chain_instance() {
  auto m = eye(9, 9);
  auto hear = [&](int d, std::initializer_list<int> ss) {
    for (int s : ss) m[d - 1][s - 1] = 1;
  };
  hear(5, {1, 4});
  hear(9, {1, 7});
  hear(8, {6, 7});
  hear(4, {3, 6});
  hear(6, {2, 9});
  return make_unicast(9, std::move(m));
}

// Seven-unicast tree: alignment edges 1-2, 2-3, 2-4, 4-5 (fork at 2) plus
// isolated {6}, {7}; minimum conflict distance 2.
Instance seven_user_tree_instance() {
  auto m = eye(7, 7);
  auto hear = [&](int d, std::initializer_list<int> ss) {
    for (int s : ss) m[d - 1][s - 1] = 1;
  };
  hear(5, {1, 2});
  hear(6, {2, 3});
  hear(7, {2, 4});
  hear(1, {4, 5});
  return make_unicast(7, std::move(m));
}

// Four-unicast pair sharing one alignment triangle {1,2,3} plus {4} and the
// same undirected conflict pairs, split by their demand graphs: the first is
// acyclic (rate 1/4), the second keeps a cycle (rate 1/3).
Instance same_graph_acyclic_instance() {
  auto m = eye(4, 4);
  m[1][0] = 1;
  m[2][0] = m[2][1] = 1;
  m[3][0] = m[3][1] = m[3][2] = 1;
  return make_unicast(4, std::move(m));
}

Instance same_graph_cyclic_instance() {
  auto m = eye(4, 4);
  m[0][2] = 1;
  m[1][0] = 1;
  m[2][1] = 1;
  m[3][0] = m[3][1] = m[3][2] = 1;
  return make_unicast(4, std::move(m));
}

// Four-cell downlink crossed network: two messages per base station, one
// combined two-message destination per shared border.
Instance four_cell_instance() {
  Instance inst;
  inst.kind = Kind::TIM;
  inst.num_sources = 4;  // base stations A..D
  inst.num_destinations = 4;
  inst.matrix = {{1, 1, 0, 0}, {1, 0, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}};
  inst.messages = {{"a1", 0, {0}}, {"a2", 0, {1}}, {"b1", 1, {0}}, {"b2", 1, {2}},
                   {"c1", 2, {3}}, {"c2", 2, {1}}, {"d1", 3, {3}}, {"d2", 3, {2}}};
  return validate(std::move(inst));
}

LinearScheme four_cell_stored_scheme(const Instance& inst) {
  LinearScheme s;
  s.block_length = 3;
  s.p = 2;
  s.seed = kDefaultSeed;
  const FMatrix v1(3, 1, 2, {1, 0, 0});
  const FMatrix v2(3, 1, 2, {0, 1, 0});
  const FMatrix v3(3, 1, 2, {0, 0, 1});
  const FMatrix v4(3, 1, 2, {1, 1, 1});
  s.precoders = {{"a1", v1}, {"c1", v1}, {"a2", v2}, {"b2", v2},
                 {"c2", v3}, {"d2", v3}, {"b1", v4}, {"d1", v4}};
  std::vector<FMatrix> by_index;
  for (const auto& m : inst.messages) by_index.push_back(s.precoders.at(m.id));
  std::string why;
  if (!derive_combiners(inst, by_index, 3, 2, &s.combiners, &why))
    fail("InternalError", "stored four-cell scheme must be derivable: " + why);
  return s;
}

json expect(std::initializer_list<std::pair<std::string, json>> kv) {
  json j = json::object();
  for (const auto& [k, v] : kv) j[k] = v;
  return j;
}

}  // namespace

std::vector<FixtureEntry> fixtures() {
  std::vector<FixtureEntry> out;

  out.push_back({"birk_kol", birk_kol_instance(),
                 expect({{"half_rate_feasible", true},
                         {"delta", "infinity"},
                         {"capacity", rat_to_json(rat(1, 2))},
                         {"alignment_sets", json::array({json::array({"W1", "W5"}),
                                                         json::array({"W2"}),
                                                         json::array({"W3", "W4"})})}}),
                 "text-specified", std::nullopt});

  out.push_back({"fig5", ten_user_instance(),
                 expect({{"half_rate_feasible", true},
                         {"delta", "infinity"},
                         {"capacity", rat_to_json(rat(1, 2))},
                         {"set_pair_rate", rat_to_json(rat(3, 10))},
                         {"note", "the source figure's user headcount (nine) disagrees with its "
                                  "ten-message alignment-set enumeration; the enumeration is "
                                  "followed"}}),
                 "figure-transcribed", std::nullopt});

  out.push_back({"fig6_a", groupcast_acyclic_instance(),
                 expect({{"demand_acyclic", true}, {"capacity", rat_to_json(rat(1, 5))}}),
                 "figure-transcribed", std::nullopt});
  out.push_back({"fig6_d", groupcast_relaxed_instance(),
                 expect({{"demand_acyclic", true}, {"capacity", rat_to_json(rat(1, 5))}}),
                 "figure-transcribed", std::nullopt});
  out.push_back({"fig6_e", groupcast_cyclic_instance(),
                 expect({{"demand_acyclic", false},
                         {"relaxable", true},
                         {"capacity", rat_to_json(rat(1, 5))}}),
                 "figure-transcribed", std::nullopt});

  out.push_back({"fig7", nine_user_forked_instance(),
                 expect({{"delta", 2},
                         {"psi", 2},
                         {"capacity", rat_to_json(rat(2, 5))},
                         {"big_set", json::array({"W1", "W3", "W4", "W6", "W7"})}}),
                 "figure-transcribed", std::nullopt});
  out.push_back({"fig8", nine_user_chain_instance(),
                 expect({{"delta", 3}, {"psi", 2}, {"capacity", rat_to_json(rat(3, 7))}}),
                 "figure-transcribed", std::nullopt});

  out.push_back({"fig10", seven_user_tree_instance(),
                 expect({{"delta", 2}, {"psi", 2}, {"capacity", rat_to_json(rat(2, 5))}}),
                 "figure-transcribed", std::nullopt});

  out.push_back({"fig11a", dual(nine_user_forked_instance()),
                 expect({{"delta", 2}, {"capacity", rat_to_json(rat(2, 5))}}),
                 "figure-transcribed", std::nullopt});

  out.push_back({"fig12_a", same_graph_acyclic_instance(),
                 expect({{"demand_acyclic", true},
                         {"delta", 1},
                         {"psi", 4},
                         {"capacity", rat_to_json(rat(1, 4))}}),
                 "figure-transcribed", std::nullopt});
  out.push_back({"fig12_b", same_graph_cyclic_instance(),
                 expect({{"demand_acyclic", false},
                         {"delta", 1},
                         {"psi", 3},
                         {"capacity", rat_to_json(rat(1, 3))}}),
                 "figure-transcribed", std::nullopt});

  out.push_back({"fig13", gen_cycle_unicast(3),
                 expect({{"capacity", rat_to_json(rat(1, 2))},
                         {"exact_orthogonal", rat_to_json(rat(1, 3))},
                         {"partition_multicast", rat_to_json(rat(1, 2))}}),
                 "text-specified", std::nullopt});

  out.push_back({"pentagon", gen_pentagon_family(5),
                 expect({{"delta", 2},
                         {"capacity", rat_to_json(rat(2, 5))},
                         {"fractional_orthogonal", rat_to_json(rat(2, 5))}}),
                 "text-specified", std::nullopt});

  {
    Instance fc = four_cell_instance();
    LinearScheme stored = four_cell_stored_scheme(fc);
    out.push_back({"four_cell", std::move(fc),
                   expect({{"capacity", rat_to_json(rat(1, 3))},
                           {"exact_orthogonal", rat_to_json(rat(1, 4))},
                           {"delta", 1}}),
                   "text-specified", std::move(stored)});
  }

  return out;
}

const FixtureEntry& fixture(const std::string& name) {
  static const std::vector<FixtureEntry> all = fixtures();
  for (const auto& f : all)
    if (f.name == name) return f;
  fail("UnknownFixture", "no fixture named '" + name + "'");
}

Instance generate_named(const std::string& name, int k, int m, int n, bool wraparound) {
  if (name == "cycle-unicast") return gen_cycle_unicast(k);
  if (name == "pentagon") return gen_pentagon_family(k);
  if (name == "cliques-unicast") return gen_aligned_cliques_unicast(m);
  if (name == "pairwise-groupcast") return gen_pairwise_conflict_groupcast(k);
  if (name == "cliques-groupcast") return gen_aligned_cliques_groupcast(m);
  if (name == "linear-cellular") return gen_linear_cellular(n, wraparound);
  // Fixture names are accepted directly.
  return fixture(name).instance;
}

}  // namespace timkit
