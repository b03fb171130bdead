// Copyright (c) 2026 timkit contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "timkit/error.hpp"

namespace timkit {

enum class Kind { TIM, IC };

std::string kind_name(Kind k);

struct Message {
  std::string id;
  int source = 0;                 // 0-based
  std::vector<int> destinations;  // 0-based, sorted, unique, non-empty
};

// A problem instance: binary D x S matrix (topology for TIM, antidotes for
// IC) plus the message sets. Indices are 0-based internally; the JSON format
// is 1-based. Instances are immutable after validate() and safe to share
// read-only across concurrent analyses.
struct Instance {
  Kind kind = Kind::TIM;
  int num_sources = 0;
  int num_destinations = 0;
  std::vector<std::vector<std::uint8_t>> matrix;  // [destination][source]
  std::vector<Message> messages;

  int message_count() const { return static_cast<int>(messages.size()); }
  bool is_unicast() const;

  // Connectivity in kind-neutral form: true when destination d receives the
  // signal of source s (TIM: link present; IC: antidote absent, so the
  // signal arrives over the shared broadcast).
  bool hears(int d, int s) const {
    return kind == Kind::TIM ? matrix[d][s] != 0 : matrix[d][s] == 0;
  }

  bool desired_at(int d, int msg) const;
  // Message indices desired at destination d.
  std::vector<int> demands(int d) const;
  int find_message(const std::string& id) const;  // -1 when absent
};

// Checks all structural invariants and returns the instance unchanged.
// Throws Error with one of: DesiredLinkMissing, AntidoteOnDesired,
// DuplicateMessageSource, EmptyDestinationSet, DimensionMismatch,
// IndexOutOfRange.
Instance validate(Instance inst);

// Complement mapping between the two problem kinds; message sets are
// preserved exactly. Throws WrongKind.
Instance to_index_coding(const Instance& tim);
Instance from_index_coding(const Instance& ic);

// Reverses the roles of sources and destinations: S'=D, D'=S, matrix
// transposed, message endpoints swapped. Defined for multiple unicast only;
// throws NotUnicast.
Instance dual(const Instance& inst);

// Structural equality (kind, dimensions, matrix, message sets).
bool same_instance(const Instance& a, const Instance& b);

nlohmann::json instance_to_json(const Instance& inst);
// Strict: unknown fields rejected, shapes and ranges enforced.
Instance instance_from_json(const nlohmann::json& j);

}  // namespace timkit
