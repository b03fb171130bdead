// Copyright (c) 2026 timkit contributors
// SPDX-License-Identifier: Apache-2.0

#include "timkit/instance.hpp"

#include <algorithm>
#include <set>

#include "timkit/rational.hpp"

namespace timkit {

using nlohmann::json;

json rat_to_json(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  if (!c.get_num().fits_slong_p() || !c.get_den().fits_slong_p())
    fail("Overflow", "rational does not fit in signed long");
  return json{{"num", c.get_num().get_si()}, {"den", c.get_den().get_si()}};
}

Rat rat_from_json(const json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    fail("BadRational", "expected {num, den}");
  Rat r(j.at("num").get<long>(), j.at("den").get<long>());
  r.canonicalize();
  return r;
}

std::string kind_name(Kind k) { return k == Kind::TIM ? "TIM" : "IC"; }

bool Instance::is_unicast() const {
  return std::all_of(messages.begin(), messages.end(),
                     [](const Message& m) { return m.destinations.size() == 1; });
}

bool Instance::desired_at(int d, int msg) const {
  const auto& ds = messages[msg].destinations;
  return std::binary_search(ds.begin(), ds.end(), d);
}

std::vector<int> Instance::demands(int d) const {
  std::vector<int> out;
  for (int m = 0; m < message_count(); ++m)
    if (desired_at(d, m)) out.push_back(m);
  return out;
}

int Instance::find_message(const std::string& id) const {
  for (int m = 0; m < message_count(); ++m)
    if (messages[m].id == id) return m;
  return -1;
}

Instance validate(Instance inst) {
  if (inst.num_sources <= 0 || inst.num_destinations <= 0)
    fail("DimensionMismatch", "source and destination counts must be positive");
  if (static_cast<int>(inst.matrix.size()) != inst.num_destinations)
    fail("DimensionMismatch", "matrix must have one row per destination");
  for (const auto& row : inst.matrix) {
    if (static_cast<int>(row.size()) != inst.num_sources)
      fail("DimensionMismatch", "matrix row length must equal source count");
    for (auto v : row)
      if (v > 1) fail("DimensionMismatch", "matrix entries must be 0 or 1");
  }
  if (inst.messages.empty()) fail("EmptyDestinationSet", "instance has no messages");

  std::set<std::string> ids;
  for (auto& m : inst.messages) {
    if (!ids.insert(m.id).second)
      fail("DuplicateMessageSource", "message id '" + m.id + "' appears twice");
    if (m.source < 0 || m.source >= inst.num_sources)
      fail("IndexOutOfRange", "message '" + m.id + "' has source out of range");
    if (m.destinations.empty())
      fail("EmptyDestinationSet", "message '" + m.id + "' has no desired destination");
    std::sort(m.destinations.begin(), m.destinations.end());
    m.destinations.erase(std::unique(m.destinations.begin(), m.destinations.end()),
                         m.destinations.end());
    for (int d : m.destinations) {
      if (d < 0 || d >= inst.num_destinations)
        fail("IndexOutOfRange", "message '" + m.id + "' has destination out of range");
      // A desired link must exist (TIM); an antidote must not sit on a
      // desired pair (IC).
      if (inst.kind == Kind::TIM && inst.matrix[d][m.source] == 0)
        fail("DesiredLinkMissing",
             "message '" + m.id + "': topology is 0 on desired pair (D" + std::to_string(d + 1) +
                 ", S" + std::to_string(m.source + 1) + ")");
      if (inst.kind == Kind::IC && inst.matrix[d][m.source] == 1)
        fail("AntidoteOnDesired",
             "message '" + m.id + "': antidote set on desired pair (D" + std::to_string(d + 1) +
                 ", S" + std::to_string(m.source + 1) + ")");
    }
  }
  return inst;
}

namespace {

Instance complement(const Instance& inst, Kind target) {
  Instance out = inst;
  out.kind = target;
  for (auto& row : out.matrix)
    for (auto& v : row) v = v ? 0 : 1;
  return validate(std::move(out));
}

}  // namespace

Instance to_index_coding(const Instance& tim) {
  if (tim.kind != Kind::TIM) fail("WrongKind", "to_index_coding expects a TIM instance");
  return complement(tim, Kind::IC);
}

Instance from_index_coding(const Instance& ic) {
  if (ic.kind != Kind::IC) fail("WrongKind", "from_index_coding expects an IC instance");
  return complement(ic, Kind::TIM);
}

Instance dual(const Instance& inst) {
  if (!inst.is_unicast()) fail("NotUnicast", "duality is defined for multiple unicast only");
  Instance out;
  out.kind = inst.kind;
  out.num_sources = inst.num_destinations;
  out.num_destinations = inst.num_sources;
  out.matrix.assign(out.num_destinations, std::vector<std::uint8_t>(out.num_sources, 0));
  for (int d = 0; d < inst.num_destinations; ++d)
    for (int s = 0; s < inst.num_sources; ++s) out.matrix[s][d] = inst.matrix[d][s];
  for (const auto& m : inst.messages) {
    Message dm;
    dm.id = m.id;
    dm.source = m.destinations.front();
    dm.destinations = {m.source};
    out.messages.push_back(std::move(dm));
  }
  return validate(std::move(out));
}

bool same_instance(const Instance& a, const Instance& b) {
  if (a.kind != b.kind || a.num_sources != b.num_sources ||
      a.num_destinations != b.num_destinations || a.matrix != b.matrix)
    return false;
  if (a.messages.size() != b.messages.size()) return false;
  for (std::size_t i = 0; i < a.messages.size(); ++i) {
    const auto& x = a.messages[i];
    const auto& y = b.messages[i];
    if (x.id != y.id || x.source != y.source || x.destinations != y.destinations) return false;
  }
  return true;
}

json instance_to_json(const Instance& inst) {
  json msgs = json::array();
  for (const auto& m : inst.messages) {
    json ds = json::array();
    for (int d : m.destinations) ds.push_back(d + 1);
    msgs.push_back(json{{"id", m.id}, {"source", m.source + 1}, {"destinations", ds}});
  }
  json rows = json::array();
  for (const auto& row : inst.matrix) {
    json r = json::array();
    for (auto v : row) r.push_back(static_cast<int>(v));
    rows.push_back(r);
  }
  return json{{"kind", kind_name(inst.kind)},
              {"sources", inst.num_sources},
              {"destinations", inst.num_destinations},
              {"matrix", rows},
              {"messages", msgs}};
}

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      fail("UnknownField", "unexpected field '" + it.key() + "' in " + where);
}

}  // namespace

Instance instance_from_json(const json& j) {
  if (!j.is_object()) fail("BadInstance", "instance must be a JSON object");
  reject_unknown(j, {"kind", "sources", "destinations", "matrix", "messages"}, "instance");
  for (const char* k : {"kind", "sources", "destinations", "matrix", "messages"})
    if (!j.contains(k)) fail("BadInstance", std::string("missing field '") + k + "'");

  Instance inst;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "TIM")
    inst.kind = Kind::TIM;
  else if (kind == "IC")
    inst.kind = Kind::IC;
  else
    fail("BadInstance", "kind must be \"TIM\" or \"IC\"");
  inst.num_sources = j.at("sources").get<int>();
  inst.num_destinations = j.at("destinations").get<int>();
  if (!j.at("matrix").is_array()) fail("BadInstance", "matrix must be an array of rows");
  for (const auto& row : j.at("matrix")) {
    std::vector<std::uint8_t> r;
    for (const auto& v : row) {
      const int x = v.get<int>();
      if (x != 0 && x != 1) fail("BadInstance", "matrix entries must be 0 or 1");
      r.push_back(static_cast<std::uint8_t>(x));
    }
    inst.matrix.push_back(std::move(r));
  }
  if (!j.at("messages").is_array()) fail("BadInstance", "messages must be an array");
  for (const auto& mj : j.at("messages")) {
    reject_unknown(mj, {"id", "source", "destinations"}, "message");
    for (const char* k : {"id", "source", "destinations"})
      if (!mj.contains(k)) fail("BadInstance", std::string("message missing field '") + k + "'");
    Message m;
    m.id = mj.at("id").get<std::string>();
    m.source = mj.at("source").get<int>() - 1;
    for (const auto& d : mj.at("destinations")) m.destinations.push_back(d.get<int>() - 1);
    inst.messages.push_back(std::move(m));
  }
  return validate(std::move(inst));
}

}  // namespace timkit
