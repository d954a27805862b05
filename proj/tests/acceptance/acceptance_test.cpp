// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance gate. Each criterion prints exactly one line:
//   [k/8] <name>: PASS|FAIL (<seconds>s)
// and the process exits nonzero when any criterion fails or overruns its
// time budget. Details for failures go to stderr.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "araucaria/config/generate.hpp"
#include "araucaria/config/topology.hpp"
#include "araucaria/diagnostics.hpp"
#include "araucaria/instrument/instrument.hpp"
#include "araucaria/intent/analyzer.hpp"
#include "araucaria/intent/batch.hpp"
#include "araucaria/intent/parser.hpp"
#include "araucaria/intent/printer.hpp"
#include "araucaria/p4/emit.hpp"
#include "araucaria/p4/parser.hpp"
#include "araucaria/p4/validate.hpp"
#include "araucaria/sim/faults.hpp"
#include "araucaria/sim/metrics.hpp"
#include "araucaria/sim/simulation.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "subprocess.hpp"

using namespace araucaria;

namespace {

// Collects failure messages; a criterion passes when it stays empty.
struct Outcome {
  std::vector<std::string> failures;

  void fail(const std::string& message) { failures.push_back(message); }
  void expect(bool condition, const std::string& message) {
    if (!condition) fail(message);
  }
  bool ok() const { return failures.empty(); }
};

const instrument::TemplateSet& templates() {
  static instrument::TemplateSet set = [] {
    auto loaded = instrument::builtin_templates();
    if (!loaded.ok()) {
      std::cerr << "cannot load builtin templates\n";
      std::exit(1);
    }
    return *loaded.templates;
  }();
  return set;
}

std::optional<p4::Program> weave(const p4::Program& program, const intent::RefinementPlan& plan,
                                 Outcome& outcome, const std::string& what) {
  auto result = instrument::instrument(program, plan, templates());
  if (!result.ok()) {
    outcome.fail(what + ": weave failed: " + format_diagnostics(what, result.diagnostics));
    return std::nullopt;
  }
  return std::move(result.program);
}

int count_occurrences(const std::string& text, const std::string& needle) {
  int n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

// --- criterion 1: the synchronization intent becomes a deployable plan ---

void criterion_intent_to_config(Outcome& outcome) {
  auto parsed = intent::parse_source(testsupport::kSyncIntentText);
  outcome.expect(parsed.ok() && parsed.intents.size() == 1, "intent text failed to parse");
  if (!outcome.ok()) return;

  auto analyzed = intent::analyze(parsed.intents.front());
  outcome.expect(analyzed.ok(), "intent failed to analyze");
  if (!outcome.ok()) return;
  outcome.expect(analyzed.plan->replica_count == 2,
                 "expected two replicas, got " + std::to_string(analyzed.plan->replica_count));
  outcome.expect(analyzed.plan->consistency_mode == intent::ConsistencyMode::kLinearizable,
                 "expected linearizable consistency");

  auto topology = config::make_synthetic_topology(4, 2);
  auto generated = config::generate_config(*analyzed.plan, topology);
  outcome.expect(generated.ok(), "config generation failed");
  if (!outcome.ok()) return;

  auto emitted = config::emit_config(*generated.bundle);
  outcome.expect(
      emitted.cli_text.find("register_write consistency_model 0 1\n") != std::string::npos,
      "consistency register command missing");
  for (const char* key :
       {"\"multicast_group_entries\"", "\"multicast_group_id\" : 1", "\"replicas\"",
        "\"egress_port\"", "\"instance\""}) {
    outcome.expect(emitted.json_text.find(key) != std::string::npos,
                   std::string("config json lacks ") + key);
  }
  auto reparsed = config::parse_config_json(emitted.json_text);
  outcome.expect(reparsed.has_value() && *reparsed == *generated.bundle,
                 "config json does not round trip");
}

// --- criterion 2: weaving reshapes the parser graph exactly ---

void criterion_parser_graph(Outcome& outcome) {
  auto woven = weave(testsupport::load_netgvt(), testsupport::listing_one_plan(), outcome,
                     "netgvt");
  if (!woven) return;

  std::map<std::string, std::vector<std::string>> expected = {
      {"start", {"parse_ethernet"}},
      {"parse_ethernet", {"accept", "parse_ipv4"}},
      {"parse_ipv4", {"accept", "parse_udp"}},
      {"parse_udp", {"parse_gvt"}},
      {"parse_gvt", {"parse_araucaria"}},
      {"parse_araucaria", {"accept"}},
  };
  std::map<std::string, std::vector<std::string>> actual;
  for (const auto& state : woven->parser.states) {
    auto& targets = actual[state.name];
    for (const auto& arm : state.transitions) targets.push_back(arm.target);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  }
  outcome.expect(actual == expected, "woven gvt parser graph differs from the expected shape");

  std::mt19937_64 rng(91101);
  for (int i = 0; i < 1000; ++i) {
    auto program = testsupport::random_inc_program(rng);
    auto result = weave(program, testsupport::listing_one_plan(), outcome,
                        "generated " + std::to_string(i));
    if (!result) return;
    if (!testsupport::parser_is_acyclic(*result)) {
      outcome.fail("woven generated parser " + std::to_string(i) + " has a cycle");
      return;
    }
  }
}

// --- criterion 3: the emitted program carries the exact primitive budget ---

void criterion_primitive_budget(Outcome& outcome) {
  auto woven = weave(testsupport::load_netgvt(), testsupport::listing_one_plan(), outcome,
                     "netgvt");
  if (!woven) return;
  auto text = p4::emit_program(*woven);

  int clones = count_occurrences(text, "clone(");
  int multicasts = count_occurrences(text, "multicast(");
  int recirculates = count_occurrences(text, "recirculate(");
  outcome.expect(clones == 4, "expected 4 clone calls, found " + std::to_string(clones));
  outcome.expect(multicasts == 1,
                 "expected 1 multicast call, found " + std::to_string(multicasts));
  outcome.expect(recirculates == 1,
                 "expected 1 recirculate call, found " + std::to_string(recirculates));

  auto plan = testsupport::make_plan(1, intent::ConsistencyMode::kLinearizable, false);
  auto generated = config::generate_config(plan, config::make_synthetic_topology(45, 1));
  outcome.expect(generated.ok(), "config generation failed for 45 servers");
  if (generated.ok()) {
    outcome.expect(generated.bundle->match_action_entries == 49,
                   "expected 49 match action entries, got " +
                       std::to_string(generated.bundle->match_action_entries));
  }
}

// --- criterion 4: recovered state equals the oracle on random schedules ---

intent::RefinementPlan scenario_plan(sim::Scenario scenario) {
  switch (scenario) {
    case sim::Scenario::kSnapshotReplay: {
      auto plan = testsupport::make_plan(2, intent::ConsistencyMode::kLinearizable, false);
      plan.replication_mode.kind = intent::ReplicationMode::Kind::kSnapshot;
      return plan;
    }
    case sim::Scenario::kPerPacketReplay:
      return testsupport::make_plan(2, intent::ConsistencyMode::kLinearizable, false);
    case sim::Scenario::kMergeOnArrival:
      return testsupport::make_plan(2, intent::ConsistencyMode::kStrongEventual, true);
  }
  return testsupport::listing_one_plan();
}

void criterion_recovery_equivalence(Outcome& outcome) {
  std::mt19937_64 rng(424242);
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  const int kRates[] = {20, 30, 50};

  for (sim::Scenario scenario : {sim::Scenario::kSnapshotReplay, sim::Scenario::kPerPacketReplay,
                                 sim::Scenario::kMergeOnArrival}) {
    auto plan = scenario_plan(scenario);
    for (int trial = 0; trial < 200; ++trial) {
      std::string label = "scenario " +
                          std::to_string(static_cast<int>(scenario)) + " trial " +
                          std::to_string(trial);
      int servers = pick(1, 6);
      int rate = kRates[pick(0, 2)];
      sim::Usec crash = pick(1000, 5000) * 1000;
      int drop_count = pick(0, 3);

      sim::SimParams params;
      params.servers = servers;
      params.rate_pps = rate;
      params.scenario = scenario;
      params.horizon = crash + 5 * sim::kSecond;
      params.stop_sending = params.horizon - sim::kSecond;
      params.seed = static_cast<std::uint64_t>(trial);
      params.fault = sim::make_drop_then_crash(servers, rate, crash, "main", "r1", drop_count);
      int extra_rules = pick(0, 2);
      for (int e = 0; e < extra_rules; ++e) {
        sim::DropRule rule;
        rule.link_from = "main";
        rule.link_to = pick(0, 1) == 0 ? "r1" : "r2";
        rule.only_type = sim::MsgType::kReplicate;
        sim::Usec a = pick(0, static_cast<int>(crash / 1000)) * 1000;
        sim::Usec b = pick(static_cast<int>(a / 1000), static_cast<int>(crash / 1000)) * 1000;
        rule.window_start = a;
        rule.window_end = b;
        rule.max_count = pick(1, 3);
        params.fault.drops.push_back(rule);
      }

      auto generated = config::generate_config(plan, config::make_synthetic_topology(servers, 2));
      if (!generated.ok()) {
        outcome.fail(label + ": config generation failed");
        return;
      }
      auto built = sim::build_scenario(plan, *generated.bundle, params);
      if (!built.simulation) {
        outcome.fail(label + ": scenario construction failed: " +
                     format_diagnostics(label, built.diagnostics));
        return;
      }
      auto trace = built.simulation->run();
      auto metrics = sim::compute_metrics(trace);
      if (!metrics.crashed || metrics.partial || metrics.new_main.empty()) {
        outcome.fail(label + ": recovery did not complete inside the horizon");
        return;
      }
      auto state_it = trace.final_states.find(metrics.new_main);
      if (state_it == trace.final_states.end()) {
        outcome.fail(label + ": promoted switch has no final state");
        return;
      }
      auto sends = testsupport::unique_sends(trace);

      if (scenario == sim::Scenario::kMergeOnArrival) {
        auto fold_a = testsupport::oracle_merge_fold(sends, 1, intent::MergeFn::kMaxHdrValue);
        auto fold_b = testsupport::oracle_merge_fold(sends, 7, intent::MergeFn::kMaxHdrValue);
        auto fold_c = testsupport::oracle_merge_fold(sends, 99, intent::MergeFn::kMaxHdrValue);
        if (!(fold_a == fold_b && fold_b == fold_c)) {
          outcome.fail(label + ": merge oracle is order sensitive");
          return;
        }
        if (!(state_it->second.inc == fold_a)) {
          outcome.fail(label + ": merged state differs from the fold oracle");
          return;
        }
      } else {
        auto oracle = testsupport::oracle_total_order(sends);
        if (!oracle) {
          outcome.fail(label + ": sends are not contiguous per server");
          return;
        }
        if (!(state_it->second.inc == *oracle)) {
          outcome.fail(label + ": recovered state differs from the total order oracle");
          return;
        }
      }
    }
  }
}

// --- criterion 5: the three strategies order as designed, via the CLI ---

struct SweepCell {
  double latency = 0.0;
  std::int64_t retrans = 0;
};

void criterion_scenario_dynamics(Outcome& outcome) {
  testsupport::TempDir dir;
  auto plan_path = dir.file("plan.json");
  testsupport::write_text_file(plan_path,
                               intent::plan_to_json(testsupport::listing_one_plan()));

  auto result = testsupport::run_command({testsupport::cli_path(), "simulate", plan_path,
                                          "--sweep", "servers=2,4,6,8", "--scenarios", "1,2,3"});
  if (result.exit_code != 0) {
    outcome.fail("sweep failed with exit " + std::to_string(result.exit_code) + ": " + result.err);
    return;
  }

  std::map<std::pair<int, int>, SweepCell> cells;
  std::istringstream lines(result.out);
  std::string line;
  std::getline(lines, line);
  outcome.expect(line == "scenario,servers,recovery_latency_s,retransmissions_total",
                 "unexpected sweep header: " + line);
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    int scenario = 0;
    int servers = 0;
    double latency = 0.0;
    long long retrans = 0;
    if (std::sscanf(line.c_str(), "%d,%d,%lf,%lld", &scenario, &servers, &latency, &retrans) !=
        4) {
      outcome.fail("unparseable sweep row: " + line);
      return;
    }
    cells[{scenario, servers}] = {latency, retrans};
  }
  const int kCounts[] = {2, 4, 6, 8};
  for (int s = 1; s <= 3; ++s) {
    for (int n : kCounts) {
      if (!cells.count({s, n})) {
        outcome.fail("sweep missing cell scenario " + std::to_string(s) + " servers " +
                     std::to_string(n));
        return;
      }
    }
  }

  // at the largest deployment the strategies must order strictly
  outcome.expect(cells[{1, 8}].latency > cells[{2, 8}].latency,
                 "snapshot replay should recover slower than per packet replay");
  outcome.expect(cells[{2, 8}].latency > cells[{3, 8}].latency,
                 "per packet replay should recover slower than merge on arrival");

  // merge recovery latency stays flat across deployment sizes
  double lo = cells[{3, 2}].latency;
  double hi = lo;
  for (int n : kCounts) {
    lo = std::min(lo, cells[{3, n}].latency);
    hi = std::max(hi, cells[{3, n}].latency);
  }
  outcome.expect(lo > 0.0 && (hi - lo) / lo < 0.20,
                 "merge recovery latency varies more than twenty percent");

  // snapshot replay cost grows with the deployment; per packet stays below it
  for (std::size_t i = 1; i < 4; ++i) {
    outcome.expect(cells[{1, kCounts[i]}].retrans > cells[{1, kCounts[i - 1]}].retrans,
                   "snapshot retransmissions should increase with server count");
  }
  for (int n : kCounts) {
    outcome.expect(cells[{2, n}].retrans <= cells[{1, n}].retrans,
                   "per packet replay should never retransmit more than snapshot replay");
  }
}

// --- criterion 6: throughput collapses at the crash and returns after ---

void criterion_throughput_dip(Outcome& outcome) {
  auto plan = testsupport::listing_one_plan();
  sim::SimParams params;
  params.servers = 4;
  params.rate_pps = 50;
  params.scenario = sim::Scenario::kPerPacketReplay;
  params.horizon = 16 * sim::kSecond;
  params.stop_sending = 15 * sim::kSecond;
  params.fault = sim::make_drop_then_crash(4, 50, 6200000, "main", "r1");

  auto generated = config::generate_config(plan, config::make_synthetic_topology(4, 2));
  outcome.expect(generated.ok(), "config generation failed");
  if (!outcome.ok()) return;
  auto built = sim::build_scenario(plan, *generated.bundle, params);
  if (!built.simulation) {
    outcome.fail("scenario construction failed");
    return;
  }
  auto metrics = sim::compute_metrics(built.simulation->run());
  outcome.expect(metrics.crashed && !metrics.partial, "run did not crash and recover");
  if (!outcome.ok()) return;

  outcome.expect(metrics.rps.size() == 4, "expected four per server bucket rows");
  for (std::size_t server = 0; server < metrics.rps.size(); ++server) {
    const auto& row = metrics.rps[server];
    std::string who = "server " + std::to_string(server);
    if (row.size() < 15) {
      outcome.fail(who + ": bucket row too short");
      continue;
    }
    double pre_mean = 0.0;
    for (int b = 1; b <= 5; ++b) pre_mean += static_cast<double>(row[b]);
    pre_mean /= 5.0;
    outcome.expect(pre_mean > 0.0, who + ": no throughput before the crash");

    // the crash at 6.2s silences the first full bucket after it
    outcome.expect(row[7] == 0, who + ": bucket seven should be silent, saw " +
                                    std::to_string(row[7]));

    // after recovery the rate returns to the pre crash mean, catch up
    // bucket excluded
    for (int b = 9; b <= 14; ++b) {
      double v = static_cast<double>(row[b]);
      if (std::abs(v - pre_mean) > 0.2 * pre_mean) {
        outcome.fail(who + ": bucket " + std::to_string(b) + " rate " + std::to_string(row[b]) +
                     " strays from the pre crash mean " + std::to_string(pre_mean));
      }
    }
  }
}

// --- criterion 7: translation time scales near linearly, via the CLI ---

void criterion_translation_scaling(Outcome& outcome) {
  auto result = testsupport::run_command({testsupport::cli_path(), "bench", "--counts",
                                          "100,200,400,800", "--repeats", "5"});
  if (result.exit_code != 0) {
    outcome.fail("bench failed with exit " + std::to_string(result.exit_code) + ": " + result.err);
    return;
  }
  std::map<int, double> seconds;
  std::istringstream lines(result.out);
  std::string line;
  std::getline(lines, line);
  outcome.expect(line == "count,seconds", "unexpected bench header: " + line);
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    int count = 0;
    double secs = 0.0;
    if (std::sscanf(line.c_str(), "%d,%lf", &count, &secs) != 2) {
      outcome.fail("unparseable bench row: " + line);
      return;
    }
    seconds[count] = secs;
  }
  for (int count : {100, 200, 400, 800}) {
    if (!seconds.count(count)) {
      outcome.fail("bench missing batch size " + std::to_string(count));
      return;
    }
    outcome.expect(seconds[count] > 0.0, "non positive timing for batch " + std::to_string(count));
  }
  double ratio = seconds[800] / seconds[100];
  outcome.expect(ratio >= 4.0 && ratio <= 16.0,
                 "an eightfold batch should cost four to sixteen times as much, measured " +
                     std::to_string(ratio));
}

// --- criterion 8: both languages round trip; weaving never repeats ---

void criterion_round_trips(Outcome& outcome) {
  std::mt19937_64 rng(515253);
  for (int i = 0; i < 1000; ++i) {
    auto ast = testsupport::random_intent(rng);
    auto reparsed = intent::parse_source(intent::to_text(ast));
    if (!reparsed.ok() || reparsed.intents.size() != 1 || !(reparsed.intents.front() == ast)) {
      outcome.fail("intent round trip " + std::to_string(i) + " failed");
      return;
    }
  }

  std::mt19937_64 prog_rng(616263);
  auto plan = testsupport::listing_one_plan();
  for (int i = 0; i < 1000; ++i) {
    auto program = testsupport::random_inc_program(prog_rng);
    auto reparsed = p4::parse_program(p4::emit_program(program));
    if (!reparsed.ok() || !(*reparsed.program == program)) {
      outcome.fail("program round trip " + std::to_string(i) + " failed");
      return;
    }

    auto woven = instrument::instrument(program, plan, templates());
    if (!woven.ok()) {
      outcome.fail("weave " + std::to_string(i) + " failed");
      return;
    }
    auto again = instrument::instrument(*woven.program, plan, templates());
    if (again.ok() || !again.record.already_instrumented) {
      outcome.fail("double weave " + std::to_string(i) + " was not refused");
      return;
    }
  }
}

struct Criterion {
  const char* name;
  double budget_s;
  std::function<void(Outcome&)> body;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"intent to deployed configuration", 1.0, criterion_intent_to_config},
      {"woven parser graph shape", 10.0, criterion_parser_graph},
      {"replication primitive budget", 1.0, criterion_primitive_budget},
      {"recovery state equivalence under random faults", 60.0, criterion_recovery_equivalence},
      {"scenario dynamics ordering", 30.0, criterion_scenario_dynamics},
      {"throughput dip and return", 10.0, criterion_throughput_dip},
      {"translation time scaling", 30.0, criterion_translation_scaling},
      {"round trip fidelity and weave idempotence", 30.0, criterion_round_trips},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& criterion = criteria[i];
    Outcome outcome;
    auto start = std::chrono::steady_clock::now();
    try {
      criterion.body(outcome);
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > criterion.budget_s) {
      outcome.fail("over time budget: " + std::to_string(elapsed) + "s > " +
                   std::to_string(criterion.budget_s) + "s");
    }
    bool pass = outcome.ok();
    if (!pass) ++failures;
    std::printf("[%zu/%zu] %s: %s (%.2fs)\n", i + 1, criteria.size(), criterion.name,
                pass ? "PASS" : "FAIL", elapsed);
    std::fflush(stdout);
    for (const auto& message : outcome.failures) {
      std::cerr << "    " << message << "\n";
    }
  }
  return failures == 0 ? 0 : 1;
}
