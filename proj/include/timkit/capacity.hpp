// Copyright (c) 2026 timkit contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "timkit/baselines.hpp"
#include "timkit/instance.hpp"
#include "timkit/rational.hpp"
#include "timkit/scheme.hpp"

namespace timkit {

// Symmetric-rate report: certified lower bound, converse upper bound with
// its kind, and an exactness verdict. `psi_exact == false` downgrades any
// exactness claim that would lean on the acyclic-subset bound.
struct CapacityReport {
  Rat lower;
  std::string certificate;
  Rat upper;
  std::string upper_kind;  // trivial_one | half_rate_pairwise | slide | acyclic | dual_slide
  bool exact = false;
  std::string theorem;  // no_interference | half_rate | acyclic_demand | tree_cycle |
                        // dual_tree_cycle | bounds_only
  std::optional<int> delta;  // nullopt == infinity
  int psi = 0;
  bool psi_exact = true;
  bool half_rate_feasible = false;

  // Concrete certificates for downstream re-verification.
  std::optional<LinearScheme> scheme;
  std::optional<Schedule> schedule;
};

struct AnalysisOptions {
  std::uint64_t seed = kDefaultSeed;
  int psi_exact_limit = 20;
  int frac_orthogonal_limit = 18;
  int frac_multicast_limit = 14;
  int exact_orthogonal_limit = 14;
  int exact_multicast_limit = 14;
  // Optional externally supplied scheme; when it verifies, its symmetric rate
  // joins the lower-bound candidates.
  const LinearScheme* certificate = nullptr;
};

bool half_rate_feasible(const Instance& inst);

// Delta/(2*Delta+1); requires a finite minimum internal conflict distance.
Rat slide_upper_bound(const Instance& inst);

struct PsiResult {
  int psi = 0;
  bool exact = true;
  std::vector<int> witness;  // message indices of a largest acyclic subset found
};

// Largest acyclic subset by branch and bound (subsets of acyclic sets stay
// acyclic, so the include branch prunes as soon as acyclicity breaks). Above
// `exact_limit` messages the search is budgeted and the result is flagged as
// a lower bound only.
PsiResult max_acyclic_subset(const Instance& inst, int exact_limit = 20);

CapacityReport capacity_report(const Instance& inst, const AnalysisOptions& opts = {});

nlohmann::json report_to_json(const CapacityReport& r);

}  // namespace timkit
