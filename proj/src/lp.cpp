// Copyright (c) 2026 timkit contributors
// SPDX-License-Identifier: Apache-2.0

#include "timkit/lp.hpp"

#include <algorithm>

#include "timkit/error.hpp"

namespace timkit {

namespace {

// Dense exact-rational simplex on equality standard form:
//   min c'x  s.t.  T x = b, x >= 0
// with an explicit starting basis. Bland's rule on both the entering and
// leaving choice guarantees termination.
class Simplex {
 public:
  Simplex(std::vector<std::vector<Rat>> table, std::vector<Rat> rhs, std::vector<int> basis)
      : t_(std::move(table)), b_(std::move(rhs)), basis_(std::move(basis)) {
    rows_ = static_cast<int>(t_.size());
    cols_ = rows_ ? static_cast<int>(t_[0].size()) : 0;
  }

  // Minimizes costs over the current feasible basis; `blocked` columns are
  // never entered. Returns the objective value.
  Rat run(const std::vector<Rat>& costs, const std::vector<bool>& blocked) {
    for (;;) {
      // y = c_B B^{-1} is implicit: the tableau is kept fully reduced, so the
      // reduced cost of column j is c_j - sum_i c_{basis_i} * t_[i][j].
      int enter = -1;
      for (int j = 0; j < cols_ && enter < 0; ++j) {
        if (blocked[j]) continue;
        if (is_basic(j)) continue;
        Rat rc = costs[j];
        for (int i = 0; i < rows_; ++i)
          if (costs[basis_[i]] != 0 && t_[i][j] != 0) rc -= costs[basis_[i]] * t_[i][j];
        if (rc < 0) enter = j;
      }
      if (enter < 0) break;
      int leave = -1;
      Rat best_ratio;
      for (int i = 0; i < rows_; ++i) {
        if (t_[i][enter] <= 0) continue;
        Rat ratio = b_[i] / t_[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) fail("Unbounded", "covering LP is unbounded (internal error)");
      pivot(leave, enter);
    }
    Rat obj = 0;
    for (int i = 0; i < rows_; ++i) obj += costs[basis_[i]] * b_[i];
    return obj;
  }

  const std::vector<int>& basis() const { return basis_; }
  const std::vector<Rat>& rhs() const { return b_; }

  // Drives an artificial variable out of the basis if a non-artificial pivot
  // exists in its row; degenerate rows whose every usable entry is zero are
  // harmless (the constraint is redundant).
  void kick_artificial(int first_artificial) {
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < first_artificial) continue;
      for (int j = 0; j < first_artificial; ++j) {
        if (t_[i][j] != 0) {
          pivot(i, j);
          break;
        }
      }
    }
  }

 private:
  bool is_basic(int j) const {
    return std::find(basis_.begin(), basis_.end(), j) != basis_.end();
  }

  void pivot(int row, int col) {
    const Rat inv = 1 / t_[row][col];
    for (auto& v : t_[row]) v *= inv;
    b_[row] *= inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == row || t_[i][col] == 0) continue;
      const Rat f = t_[i][col];
      for (int j = 0; j < cols_; ++j)
        if (t_[row][j] != 0) t_[i][j] -= f * t_[row][j];
      b_[i] -= f * b_[row];
    }
    basis_[row] = col;
  }

  std::vector<std::vector<Rat>> t_;
  std::vector<Rat> b_;
  std::vector<int> basis_;
  int rows_ = 0, cols_ = 0;
};

}  // namespace

CoverSolution solve_fractional_cover(int num_elements, const std::vector<CoverColumn>& columns) {
  const int n = static_cast<int>(columns.size());
  if (num_elements <= 0) return {Rat(0), {}};
  std::vector<bool> covered(num_elements, false);
  for (const auto& c : columns)
    for (int m : c.members) covered[m] = true;
  for (int e = 0; e < num_elements; ++e)
    if (!covered[e]) fail("Infeasible", "element " + std::to_string(e) + " appears in no column");

  // Layout: [columns | surplus | artificial], constraints A w - s + a = 1.
  const int surplus0 = n;
  const int art0 = n + num_elements;
  const int total = n + 2 * num_elements;
  std::vector<std::vector<Rat>> t(num_elements, std::vector<Rat>(total, Rat(0)));
  for (int j = 0; j < n; ++j)
    for (int m : columns[j].members) t[m][j] = 1;
  for (int e = 0; e < num_elements; ++e) {
    t[e][surplus0 + e] = -1;
    t[e][art0 + e] = 1;
  }
  std::vector<Rat> rhs(num_elements, Rat(1));
  std::vector<int> basis(num_elements);
  for (int e = 0; e < num_elements; ++e) basis[e] = art0 + e;

  Simplex sx(std::move(t), std::move(rhs), std::move(basis));

  // Phase 1: minimize the artificial total.
  std::vector<Rat> phase1(total, Rat(0));
  for (int e = 0; e < num_elements; ++e) phase1[art0 + e] = 1;
  std::vector<bool> blocked(total, false);
  const Rat infeas = sx.run(phase1, blocked);
  if (infeas != 0) fail("Infeasible", "covering LP has no feasible point (internal error)");
  sx.kick_artificial(art0);

  // Phase 2: original costs, artificials locked out.
  std::vector<Rat> costs(total, Rat(0));
  for (int j = 0; j < n; ++j) costs[j] = columns[j].cost;
  for (int e = 0; e < num_elements; ++e) blocked[art0 + e] = true;
  const Rat obj = sx.run(costs, blocked);

  CoverSolution sol;
  sol.objective = obj;
  for (int i = 0; i < num_elements; ++i) {
    const int v = sx.basis()[i];
    if (v < n && sx.rhs()[i] > 0) sol.weights.push_back({v, sx.rhs()[i]});
  }
  std::sort(sol.weights.begin(), sol.weights.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return sol;
}

namespace {

void bron_kerbosch(const std::vector<std::vector<bool>>& indep, std::vector<int>& r,
                   std::vector<int> p, std::vector<int> x,
                   std::vector<std::vector<int>>& out) {
  if (p.empty() && x.empty()) {
    out.push_back(r);
    return;
  }
  // Plain (pivotless) expansion in vertex order keeps the output order
  // deterministic; instance sizes here stay small.
  while (!p.empty()) {
    int v = p.front();
    r.push_back(v);
    std::vector<int> np, nx;
    for (int u : p)
      if (u != v && indep[v][u]) np.push_back(u);
    for (int u : x)
      if (indep[v][u]) nx.push_back(u);
    bron_kerbosch(indep, r, std::move(np), std::move(nx), out);
    r.pop_back();
    p.erase(p.begin());
    x.push_back(v);
  }
}

}  // namespace

std::vector<std::vector<int>> maximal_independent_sets(int n,
                                                       const std::vector<std::vector<bool>>& adj) {
  std::vector<std::vector<bool>> indep(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) indep[i][j] = i != j && !adj[i][j];
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  std::vector<std::vector<int>> out;
  std::vector<int> r;
  bron_kerbosch(indep, r, all, {}, out);
  for (auto& s : out) std::sort(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace timkit
