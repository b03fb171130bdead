// Copyright (c) 2026 timkit contributors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: analysis, scheme synthesis and verification,
// baseline schedulers, instance transforms, generators, and DOT export.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "timkit/baselines.hpp"
#include "timkit/capacity.hpp"
#include "timkit/generators.hpp"
#include "timkit/graphs.hpp"
#include "timkit/instance.hpp"
#include "timkit/scheme.hpp"

namespace {

using nlohmann::json;
using namespace timkit;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;  // analysis-negative (e.g. verification failed)
constexpr int kExitUsage = 2;     // usage or I/O error

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) fail("IoError", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) fail("IoError", "cannot write '" + path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << "\n";
}

Instance load_instance(const std::string& path) {
  json j;
  try {
    j = json::parse(read_input(path));
  } catch (const json::exception& e) {
    fail("BadInstance", std::string("instance parse error: ") + e.what());
  }
  return instance_from_json(j);
}

LinearScheme load_scheme(const std::string& path) {
  json j;
  try {
    j = json::parse(read_input(path));
  } catch (const json::exception& e) {
    fail("BadScheme", std::string("scheme parse error: ") + e.what());
  }
  return scheme_from_json(j);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TIMKIT_SEED")) return std::strtoull(env, nullptr, 10);
  return kDefaultSeed;
}

json schedule_to_json(const Instance& inst, const Schedule& s) {
  json cols = json::array();
  for (const auto& c : s.columns) {
    json members = json::array();
    for (int m : c.members) members.push_back(inst.messages[m].id);
    cols.push_back(json{{"members", members}, {"weight", rat_to_json(c.weight)}, {"cost", c.cost}});
  }
  return json{{"kind", s.kind},
              {"columns", cols},
              {"total", rat_to_json(s.total)},
              {"symmetric_rate", rat_to_json(s.symmetric_rate)},
              {"explicit_slots", s.explicit_slots}};
}

json verify_to_json(const VerifyResult& vr) {
  json fails = json::array();
  for (const auto& f : vr.failures)
    fails.push_back(json{{"destination", f.destination + 1},
                         {"message", f.message},
                         {"kind", f.kind},
                         {"detail", f.detail}});
  json rates = json::object();
  for (const auto& [id, r] : vr.rates) rates[id] = rat_to_json(r);
  return json{{"ok", vr.ok},
              {"failures", fails},
              {"rates", rates},
              {"symmetric_rate", rat_to_json(vr.symmetric_rate)}};
}

int run(int argc, char** argv) {
  CLI::App app{"timkit - topology-only interference analysis toolkit"};
  app.require_subcommand(1);

  std::string inst_path, scheme_path, out_path, method, mode = "auto", gen_name;
  std::uint64_t seed = default_seed();
  int psi_limit = 20, lp_limit = 18, pm_limit = 14, n_max = 4;
  int gk = 5, gm = 4, gn = 6;
  bool wraparound = true;
  std::string cert_path, primes_csv = "2,3";
  std::uint32_t field_p = 0;
  std::string merge = "none";

  int analyze_lp_limit = 18, analyze_pm_limit = 14;
  auto* analyze = app.add_subcommand("analyze", "symmetric-rate report for an instance");
  analyze->add_option("instance", inst_path, "instance JSON ('-' for stdin)")->required();
  analyze->add_option("-o,--output", out_path, "output path ('-' = stdout)");
  analyze->add_option("--seed", seed, "synthesis seed");
  analyze->add_option("--psi-limit", psi_limit, "exact acyclic-subset search limit");
  analyze->add_option("--lp-limit", analyze_lp_limit, "orthogonal LP size cap");
  analyze->add_option("--pm-limit", analyze_pm_limit, "multicast enumeration size cap");
  analyze->add_option("--certificate", cert_path, "optional scheme JSON used as a lower bound");

  auto* solve = app.add_subcommand("solve", "synthesize a verified linear scheme");
  solve->add_option("instance", inst_path)->required();
  solve->add_option("--scheme", mode, "auto|half-rate|theorem12")
      ->check(CLI::IsMember({"auto", "half-rate", "theorem12"}));
  solve->add_option("--seed", seed);
  solve->add_option("--merge", merge, "half-rate class merging: none|greedy")
      ->check(CLI::IsMember({"none", "greedy"}));
  solve->add_option("-p,--prime", field_p, "half-rate field (0 = automatic)");
  solve->add_option("-o,--output", out_path);

  auto* verify_cmd = app.add_subcommand("verify", "check a scheme against an instance");
  verify_cmd->add_option("instance", inst_path)->required();
  verify_cmd->add_option("scheme", scheme_path)->required();
  verify_cmd->add_option("-o,--output", out_path);

  auto* baseline = app.add_subcommand("baseline", "orthogonal / multicast schedulers");
  baseline->add_option("instance", inst_path)->required();
  baseline
      ->add_option("--method", method,
                   "exact-tdma|frac-tdma|pm|frac-pm|greedy-pm|m-matrix|iterated")
      ->required()
      ->check(CLI::IsMember(
          {"exact-tdma", "frac-tdma", "pm", "frac-pm", "greedy-pm", "m-matrix", "iterated"}));
  baseline->add_option("--limit", lp_limit, "instance size cap for the exact/LP methods");
  baseline->add_option("-o,--output", out_path);

  auto* dual_cmd = app.add_subcommand("dual", "source/destination-reversed instance");
  dual_cmd->add_option("instance", inst_path)->required();
  dual_cmd->add_option("-o,--output", out_path);

  auto* convert = app.add_subcommand("convert", "swap between the two problem kinds");
  convert->add_option("instance", inst_path)->required();
  convert->add_option("-o,--output", out_path);

  auto* gen = app.add_subcommand("gen", "emit a generated instance or bundled fixture");
  gen->add_option("name", gen_name,
                  "cycle-unicast|pentagon|cliques-unicast|pairwise-groupcast|"
                  "cliques-groupcast|linear-cellular|<fixture name>")
      ->required();
  gen->add_option("--k", gk, "message count (cycle-unicast, pentagon, pairwise-groupcast)");
  gen->add_option("--m", gm, "alignment set count (cliques generators)");
  gen->add_option("--n", gn, "cell count (linear-cellular)");
  gen->add_flag("--wraparound,!--no-wraparound", wraparound, "close the cellular chain");
  gen->add_option("-o,--output", out_path);

  auto* oracle = app.add_subcommand("oracle", "exhaustive one-stream search (small instances)");
  oracle->add_option("instance", inst_path)->required();
  oracle->add_option("--n-max", n_max, "largest block length tried");
  oracle->add_option("--primes", primes_csv, "comma-separated prime list");
  oracle->add_option("-o,--output", out_path);

  auto* dot = app.add_subcommand("export-dot", "alignment/conflict/demand graphs as DOT");
  dot->add_option("instance", inst_path)->required();
  dot->add_option("-o,--output", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze) {
      const Instance inst = load_instance(inst_path);
      AnalysisOptions opts;
      opts.seed = seed;
      opts.psi_exact_limit = psi_limit;
      opts.frac_orthogonal_limit = analyze_lp_limit;
      opts.exact_orthogonal_limit = std::min(analyze_lp_limit, analyze_pm_limit);
      opts.frac_multicast_limit = analyze_pm_limit;
      opts.exact_multicast_limit = analyze_pm_limit;
      LinearScheme cert;
      if (!cert_path.empty()) {
        cert = load_scheme(cert_path);
        opts.certificate = &cert;
      }
      const CapacityReport r = capacity_report(inst, opts);
      write_output(out_path, report_to_json(r).dump(2));
      return kExitOk;
    }
    if (*solve) {
      const Instance inst = load_instance(inst_path);
      HalfRateOptions hr;
      hr.seed = seed;
      hr.p = field_p;
      hr.merge = merge == "greedy" ? MergePolicy::Greedy : MergePolicy::None;
      LinearScheme scheme;
      if (mode == "half-rate") {
        scheme = build_half_rate(inst, hr);
      } else if (mode == "theorem12") {
        scheme = build_tree_cycle(inst, seed);
      } else {
        // auto: pick whichever settling construction applies.
        const StructureGraphs g = build_graphs(inst);
        if (!g.min_conflict_distance) {
          scheme = build_half_rate(inst, hr);
        } else if (tree_cycle_applicable(inst, g)) {
          scheme = build_tree_cycle(inst, seed);
        } else if (inst.is_unicast() &&
                   tree_cycle_applicable(dual(inst), build_graphs(dual(inst)))) {
          scheme = dualize_scheme(dual(inst), build_tree_cycle(dual(inst), seed));
        } else {
          std::cerr << "no constructive scheme applies to this instance\n";
          return kExitNegative;
        }
      }
      write_output(out_path, scheme_to_json(scheme).dump(2));
      return kExitOk;
    }
    if (*verify_cmd) {
      const Instance inst = load_instance(inst_path);
      const LinearScheme scheme = load_scheme(scheme_path);
      const VerifyResult vr = verify(inst, scheme);
      write_output(out_path, verify_to_json(vr).dump(2));
      return vr.ok ? kExitOk : kExitNegative;
    }
    if (*baseline) {
      const Instance inst = load_instance(inst_path);
      json out;
      if (method == "exact-tdma") {
        out = schedule_to_json(inst, exact_orthogonal(inst, std::min(lp_limit, pm_limit)).schedule);
      } else if (method == "frac-tdma") {
        out = schedule_to_json(inst, fractional_orthogonal(inst, lp_limit).schedule);
      } else if (method == "pm") {
        out = schedule_to_json(inst,
                               partition_multicast_exact(inst, std::min(lp_limit, pm_limit)).schedule);
      } else if (method == "frac-pm") {
        out = schedule_to_json(
            inst, fractional_partition_multicast(inst, std::min(lp_limit, pm_limit)).schedule);
      } else if (method == "greedy-pm") {
        const auto r = greedy_partition_multicast(inst);
        out = schedule_to_json(inst, r.schedule);
        out["slot_bound"] = r.slot_bound;
      } else if (method == "m-matrix") {
        out = schedule_to_json(inst, m_matrix_schedule(inst));
      } else {
        out = schedule_to_json(inst, iterated_orthogonal(inst).schedule);
      }
      write_output(out_path, out.dump(2));
      return kExitOk;
    }
    if (*dual_cmd) {
      write_output(out_path, instance_to_json(dual(load_instance(inst_path))).dump(2));
      return kExitOk;
    }
    if (*convert) {
      const Instance inst = load_instance(inst_path);
      const Instance other =
          inst.kind == Kind::TIM ? to_index_coding(inst) : from_index_coding(inst);
      write_output(out_path, instance_to_json(other).dump(2));
      return kExitOk;
    }
    if (*gen) {
      const Instance inst = generate_named(gen_name, gk, gm, gn, wraparound);
      write_output(out_path, instance_to_json(inst).dump(2));
      return kExitOk;
    }
    if (*oracle) {
      const Instance inst = load_instance(inst_path);
      OracleLimits limits;
      limits.n_max = n_max;
      limits.primes.clear();
      std::stringstream ss(primes_csv);
      std::string tok;
      while (std::getline(ss, tok, ',')) limits.primes.push_back(std::stoul(tok));
      const OracleResult r = oracle_best_linear(inst, limits);
      json out{{"feasible", r.feasible}};
      if (r.feasible) {
        out["N"] = r.block_length;
        out["p"] = r.p;
        out["rate"] = rat_to_json(r.rate);
        json lines = json::object();
        for (const auto& [id, v] : r.lines) {
          json col = json::array();
          for (int i = 0; i < v.rows(); ++i) col.push_back(v.at(i, 0));
          lines[id] = col;
        }
        out["lines"] = lines;
      }
      write_output(out_path, out.dump(2));
      return r.feasible ? kExitOk : kExitNegative;
    }
    if (*dot) {
      write_output(out_path, to_dot(load_instance(inst_path)));
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
