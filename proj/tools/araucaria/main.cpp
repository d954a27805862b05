// SPDX-License-Identifier: Apache-2.0

// Command line front end for the toolchain. Subcommands cover the whole
// path from intent text to a simulated recovery: compile, instrument,
// configure, simulate, bench and pipeline. Exit codes: 0 success, 1 domain
// error (input content is wrong), 2 usage error (bad flags, missing files).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "araucaria/config/generate.hpp"
#include "araucaria/config/topology.hpp"
#include "araucaria/diagnostics.hpp"
#include "araucaria/instrument/instrument.hpp"
#include "araucaria/instrument/templates.hpp"
#include "araucaria/intent/analyzer.hpp"
#include "araucaria/intent/batch.hpp"
#include "araucaria/intent/parser.hpp"
#include "araucaria/intent/registry.hpp"
#include "araucaria/p4/emit.hpp"
#include "araucaria/p4/parser.hpp"
#include "araucaria/sim/faults.hpp"
#include "araucaria/sim/metrics.hpp"
#include "araucaria/sim/simulation.hpp"
#include "araucaria/sim/trace.hpp"
#include "araucaria/sim/types.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  out = buffer.str();
  return true;
}

bool write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return out.good();
}

void report(const std::string& source, const std::vector<araucaria::Diagnostic>& diags) {
  if (!diags.empty()) std::cerr << araucaria::format_diagnostics(source, diags);
}

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kUsageError;
}

int domain_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kDomainError;
}

std::optional<araucaria::intent::RefinementPlan> load_plan(const std::string& path) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read " << path << "\n";
    return std::nullopt;
  }
  std::vector<araucaria::Diagnostic> diags;
  auto plan = araucaria::intent::plan_from_json(text, &diags);
  report(path, diags);
  return plan;
}

std::optional<araucaria::config::Topology> load_topology(const std::string& path) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read " << path << "\n";
    return std::nullopt;
  }
  std::vector<araucaria::Diagnostic> diags;
  auto topology = araucaria::config::topology_from_json(text, &diags);
  report(path, diags);
  if (!topology) return std::nullopt;
  auto problems = araucaria::config::validate_topology(*topology);
  report(path, problems);
  if (araucaria::has_errors(problems)) return std::nullopt;
  return topology;
}

araucaria::sim::Usec to_usec(double seconds) {
  return static_cast<araucaria::sim::Usec>(std::llround(seconds * 1e6));
}

std::string format_seconds(double seconds, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, seconds);
  return buffer;
}

// Run parameters shared by simulate and pipeline. A params JSON file and
// explicit flags both write into one of these; flags win.
struct RunConfig {
  int servers = 0;       // 0 means take the configured server list size
  int rate = 50;
  int scenario = 2;
  double crash_s = -1;   // <0 unset, 0 no fault, >0 crash time in seconds
  int drop_count = 3;
  double horizon_s = 10.0;
  double stop_s = -1;    // <0 means one second before the horizon
  std::uint64_t seed = 1;
};

bool apply_params_json(const json& j, RunConfig& rc, std::string* error) {
  if (!j.is_object()) {
    *error = "params must be a JSON object";
    return false;
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    try {
      if (it.key() == "servers") {
        rc.servers = it.value().get<int>();
      } else if (it.key() == "rate") {
        rc.rate = it.value().get<int>();
      } else if (it.key() == "scenario") {
        rc.scenario = it.value().get<int>();
      } else if (it.key() == "crash") {
        rc.crash_s = it.value().get<double>();
      } else if (it.key() == "drop_count") {
        rc.drop_count = it.value().get<int>();
      } else if (it.key() == "horizon") {
        rc.horizon_s = it.value().get<double>();
      } else if (it.key() == "stop_sending") {
        rc.stop_s = it.value().get<double>();
      } else if (it.key() == "seed") {
        rc.seed = it.value().get<std::uint64_t>();
      } else {
        *error = "unknown params key: " + it.key();
        return false;
      }
    } catch (const json::exception&) {
      *error = "bad value for params key: " + it.key();
      return false;
    }
  }
  if (rc.scenario < 1 || rc.scenario > 3) {
    *error = "scenario must be 1, 2 or 3";
    return false;
  }
  if (rc.servers < 0 || rc.rate <= 0 || rc.drop_count < 0 || rc.horizon_s <= 0) {
    *error = "servers, rate, drop_count and horizon must be positive";
    return false;
  }
  return true;
}

araucaria::sim::SimParams to_sim_params(const RunConfig& rc,
                                        const araucaria::intent::RefinementPlan& plan) {
  araucaria::sim::SimParams params;
  params.servers = rc.servers;
  params.rate_pps = rc.rate;
  params.scenario = static_cast<araucaria::sim::Scenario>(rc.scenario);
  params.horizon = to_usec(rc.horizon_s);
  params.stop_sending =
      rc.stop_s < 0 ? params.horizon - araucaria::sim::kSecond : to_usec(rc.stop_s);
  params.seed = rc.seed;
  if (plan.replication_mode.kind == araucaria::intent::ReplicationMode::Kind::kSnapshot) {
    params.snapshot_interval = to_usec(plan.replication_mode.snapshot_interval_s);
  }
  return params;
}

// The canonical fault is a short drop window before a crash of the main.
std::optional<std::string> attach_fault(const araucaria::config::ConfigBundle& bundle,
                                        const RunConfig& rc, araucaria::sim::SimParams& params) {
  if (rc.crash_s <= 0) return std::nullopt;
  if (bundle.recovery_rules.empty()) {
    return std::string("fault injection needs at least one replica to fail over to");
  }
  const auto& rule = bundle.recovery_rules.front();
  params.fault =
      araucaria::sim::make_drop_then_crash(params.servers, params.rate_pps, to_usec(rc.crash_s),
                                           rule.on_failure_of, rule.new_main, rc.drop_count,
                                           params.hop_latency);
  return std::nullopt;
}

struct RunArtifacts {
  araucaria::sim::SimTrace trace;
  araucaria::sim::Metrics metrics;
};

std::optional<RunArtifacts> run_simulation(const araucaria::intent::RefinementPlan& plan,
                                           const araucaria::config::ConfigBundle& bundle,
                                           const araucaria::sim::SimParams& params) {
  auto scenario = araucaria::sim::build_scenario(plan, bundle, params);
  report("simulate", scenario.diagnostics);
  if (!scenario.simulation) return std::nullopt;
  RunArtifacts artifacts;
  artifacts.trace = scenario.simulation->run();
  artifacts.metrics = araucaria::sim::compute_metrics(artifacts.trace);
  return artifacts;
}

bool write_run_outputs(const fs::path& dir, const RunArtifacts& artifacts) {
  return write_file(dir / "trace.jsonl", araucaria::sim::trace_to_jsonl(artifacts.trace)) &&
         write_file(dir / "metrics.json", araucaria::sim::metrics_to_json(artifacts.metrics)) &&
         write_file(dir / "rps.csv", araucaria::sim::rps_to_csv(artifacts.metrics));
}

std::string run_summary(const RunConfig& rc, const araucaria::sim::Metrics& metrics) {
  std::ostringstream out;
  out << "scenario=" << rc.scenario << " servers=" << rc.servers
      << " crashed=" << (metrics.crashed ? "true" : "false");
  if (metrics.recovery_latency_s) {
    out << " recovery_latency_s=" << format_seconds(*metrics.recovery_latency_s, 6);
  }
  out << " retransmissions_total=" << metrics.retransmissions_total;
  if (metrics.partial) out << " partial=true";
  out << "\n";
  return out.str();
}

// A sweep compares the three recovery strategies, so each cell gets a plan
// variant carrying that strategy: snapshots with linearizable replay,
// per-packet with linearizable replay, per-packet with merge on arrival.
araucaria::intent::RefinementPlan scenario_plan(const araucaria::intent::RefinementPlan& base,
                                                int scenario) {
  using araucaria::intent::ConsistencyMode;
  using araucaria::intent::MergeFn;
  using araucaria::intent::ReplicationMode;
  auto plan = base;
  switch (scenario) {
    case 1:
      plan.consistency_mode = ConsistencyMode::kLinearizable;
      plan.merge.reset();
      plan.replication_mode = {ReplicationMode::Kind::kSnapshot, 4.0};
      break;
    case 2:
      plan.consistency_mode = ConsistencyMode::kLinearizable;
      plan.merge.reset();
      plan.replication_mode = {ReplicationMode::Kind::kPerPacket, 4.0};
      break;
    default:
      plan.consistency_mode = ConsistencyMode::kStrongEventual;
      plan.merge = MergeFn::kMaxHdrValue;
      plan.replication_mode = {ReplicationMode::Kind::kPerPacket, 4.0};
      break;
  }
  return plan;
}

bool parse_int_list(const std::string& text, std::vector<int>& out) {
  out.clear();
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token.empty()) continue;
    try {
      std::size_t used = 0;
      int value = std::stoi(token, &used);
      if (used != token.size()) return false;
      out.push_back(value);
    } catch (const std::exception&) {
      return false;
    }
  }
  return true;
}

// Deterministic corpus for translation timing: valid intents cycling
// through the grammar's requirement combinations.
std::string synthetic_intent_document(int count) {
  static const char* kFunctions[] = {"synchronization", "aggregation", "caching", "telemetry"};
  std::ostringstream out;
  for (int i = 0; i < count; ++i) {
    out << "Create intent bench_" << i << " {\n";
    out << "    functionality: " << kFunctions[i % 4] << " [size: " << (i % 7 + 1) << "],\n";
    out << "    availability: tolerates " << (i % 3 + 1) << " failures,\n";
    switch (i % 3) {
      case 0: out << "    consistency: strong,\n"; break;
      case 1: out << "    consistency: eventual,\n"; break;
      default: out << "    consistency: strong [max[hdr.value]],\n"; break;
    }
    out << "}\n\n";
  }
  return out.str();
}

struct CompileOpts {
  std::string intent_path;
  std::string out_path;
  std::string registry_path;
  std::string replication = "per-packet";
  double snapshot_interval = 4.0;
};

int cmd_compile(const CompileOpts& opt) {
  std::string source;
  if (!read_file(opt.intent_path, source)) return usage_error("cannot read " + opt.intent_path);

  araucaria::intent::AnalyzeOptions options;
  options.replication_mode.kind = opt.replication == "snapshot"
                                      ? araucaria::intent::ReplicationMode::Kind::kSnapshot
                                      : araucaria::intent::ReplicationMode::Kind::kPerPacket;
  options.replication_mode.snapshot_interval_s = opt.snapshot_interval;

  auto parsed = araucaria::intent::parse_source(source);
  report(opt.intent_path, parsed.diagnostics);
  bool failed = araucaria::has_errors(parsed.diagnostics);

  std::optional<araucaria::intent::PlanRegistry> registry;
  if (!opt.registry_path.empty()) {
    registry.emplace();
    if (fs::exists(opt.registry_path)) {
      std::string text;
      if (!read_file(opt.registry_path, text)) {
        return usage_error("cannot read " + opt.registry_path);
      }
      std::vector<araucaria::Diagnostic> diags;
      auto loaded = araucaria::intent::PlanRegistry::from_json(text, &diags);
      report(opt.registry_path, diags);
      if (!loaded) return kDomainError;
      registry = std::move(*loaded);
    }
  }

  json plans = json::array();
  for (const auto& ast : parsed.intents) {
    auto analyzed = araucaria::intent::analyze(ast, options);
    report(opt.intent_path, analyzed.diagnostics);
    if (araucaria::has_errors(analyzed.diagnostics)) failed = true;
    if (registry) {
      bool plan_op = ast.operation == araucaria::intent::Operation::kCreate ||
                     ast.operation == araucaria::intent::Operation::kUpdate;
      if (analyzed.plan || !plan_op) {
        std::vector<araucaria::Diagnostic> diags;
        registry->apply(ast.operation, ast.name, analyzed.plan, &diags);
        report(opt.intent_path, diags);
        if (araucaria::has_errors(diags)) failed = true;
      }
    }
    if (analyzed.plan) {
      plans.push_back(json::parse(araucaria::intent::plan_to_json(*analyzed.plan)));
    }
  }

  std::string out_text =
      (plans.size() == 1 ? plans[0].dump(2) : plans.dump(2)) + std::string("\n");
  if (opt.out_path.empty()) {
    std::cout << out_text;
  } else if (!write_file(opt.out_path, out_text)) {
    return domain_error("cannot write " + opt.out_path);
  }

  if (registry && !write_file(opt.registry_path, registry->to_json())) {
    return domain_error("cannot write " + opt.registry_path);
  }
  return failed ? kDomainError : kOk;
}

struct InstrumentOpts {
  std::string p4_path;
  std::string plan_path;
  std::string out_path;
  std::string record_path;
  std::string templates_dir;
};

int cmd_instrument(const InstrumentOpts& opt) {
  std::string p4_text;
  if (!read_file(opt.p4_path, p4_text)) return usage_error("cannot read " + opt.p4_path);
  auto plan = load_plan(opt.plan_path);
  if (!plan) return kDomainError;

  araucaria::p4::ParseOptions parse_options;
  parse_options.source_name = opt.p4_path;
  auto parsed = araucaria::p4::parse_program(p4_text, parse_options);
  report(opt.p4_path, parsed.diagnostics);
  if (!parsed.program) return kDomainError;

  auto templates = opt.templates_dir.empty()
                       ? araucaria::instrument::builtin_templates()
                       : araucaria::instrument::load_templates(opt.templates_dir);
  report(opt.templates_dir.empty() ? "templates" : opt.templates_dir, templates.diagnostics);
  if (!templates.templates) return kDomainError;

  auto woven = araucaria::instrument::instrument(*parsed.program, *plan, *templates.templates);
  report(opt.p4_path, woven.diagnostics);
  if (!woven.program) return kDomainError;

  std::string out_text = araucaria::p4::emit_program(*woven.program);
  if (opt.out_path.empty()) {
    std::cout << out_text;
  } else if (!write_file(opt.out_path, out_text)) {
    return domain_error("cannot write " + opt.out_path);
  }
  if (!opt.record_path.empty() &&
      !write_file(opt.record_path,
                  araucaria::instrument::instrumentation_record_to_json(woven.record))) {
    return domain_error("cannot write " + opt.record_path);
  }
  return kOk;
}

struct ConfigureOpts {
  std::string plan_path;
  std::string topology_path;
  std::string out_dir = ".";
};

int cmd_configure(const ConfigureOpts& opt) {
  auto plan = load_plan(opt.plan_path);
  if (!plan) return kDomainError;
  auto topology = load_topology(opt.topology_path);
  if (!topology) return kDomainError;

  auto generated = araucaria::config::generate_config(*plan, *topology);
  report(opt.topology_path, generated.diagnostics);
  if (!generated.bundle) return kDomainError;

  auto emitted = araucaria::config::emit_config(*generated.bundle);
  fs::path dir(opt.out_dir);
  if (!write_file(dir / "config.json", emitted.json_text) ||
      !write_file(dir / "commands.cli", emitted.cli_text)) {
    return domain_error("cannot write into " + opt.out_dir);
  }
  std::cout << "wrote " << (dir / "config.json").string() << " and "
            << (dir / "commands.cli").string() << "\n";
  return kOk;
}

struct SimulateOpts {
  std::string plan_path;
  std::string config_path;
  std::string topology_path;
  std::string params_path;
  std::string out_dir = ".";
  bool out_dir_set = false;
  RunConfig cli;
  bool set_servers = false;
  bool set_rate = false;
  bool set_scenario = false;
  bool set_crash = false;
  bool set_drops = false;
  bool set_horizon = false;
  bool set_stop = false;
  bool set_seed = false;
  std::string sweep;
  std::string scenarios = "1,2,3";
  std::string csv_path;
};

std::optional<RunConfig> resolve_run_config(const SimulateOpts& opt) {
  RunConfig rc;
  if (!opt.params_path.empty()) {
    std::string text;
    if (!read_file(opt.params_path, text)) {
      usage_error("cannot read " + opt.params_path);
      return std::nullopt;
    }
    json j = json::parse(text, nullptr, false);
    std::string error;
    if (j.is_discarded() || !apply_params_json(j, rc, &error)) {
      domain_error(error.empty() ? "params file is not valid JSON" : error);
      return std::nullopt;
    }
  }
  if (opt.set_servers) rc.servers = opt.cli.servers;
  if (opt.set_rate) rc.rate = opt.cli.rate;
  if (opt.set_scenario) rc.scenario = opt.cli.scenario;
  if (opt.set_crash) rc.crash_s = opt.cli.crash_s;
  if (opt.set_drops) rc.drop_count = opt.cli.drop_count;
  if (opt.set_horizon) rc.horizon_s = opt.cli.horizon_s;
  if (opt.set_stop) rc.stop_s = opt.cli.stop_s;
  if (opt.set_seed) rc.seed = opt.cli.seed;
  return rc;
}

int cmd_simulate_single(const SimulateOpts& opt) {
  auto plan = load_plan(opt.plan_path);
  if (!plan) return kDomainError;
  auto resolved = resolve_run_config(opt);
  if (!resolved) return kDomainError;
  RunConfig rc = *resolved;

  araucaria::config::ConfigBundle bundle;
  if (!opt.config_path.empty()) {
    std::string text;
    if (!read_file(opt.config_path, text)) return usage_error("cannot read " + opt.config_path);
    std::vector<araucaria::Diagnostic> diags;
    auto parsed = araucaria::config::parse_config_json(text, &diags);
    report(opt.config_path, diags);
    if (!parsed) return kDomainError;
    bundle = *parsed;
  } else {
    std::optional<araucaria::config::Topology> topology;
    if (!opt.topology_path.empty()) {
      topology = load_topology(opt.topology_path);
    } else {
      if (rc.servers <= 0) rc.servers = 4;
      topology = araucaria::config::make_synthetic_topology(
          rc.servers, static_cast<int>(plan->replica_count));
    }
    if (!topology) return kDomainError;
    auto generated = araucaria::config::generate_config(*plan, *topology);
    report(opt.topology_path.empty() ? "topology" : opt.topology_path, generated.diagnostics);
    if (!generated.bundle) return kDomainError;
    bundle = *generated.bundle;
  }
  if (rc.servers <= 0) rc.servers = static_cast<int>(bundle.server_list.size());

  auto params = to_sim_params(rc, *plan);
  if (auto error = attach_fault(bundle, rc, params)) return domain_error(*error);
  auto artifacts = run_simulation(*plan, bundle, params);
  if (!artifacts) return kDomainError;

  fs::path dir(opt.out_dir);
  if (!write_run_outputs(dir, *artifacts)) return domain_error("cannot write into " + opt.out_dir);
  std::cout << run_summary(rc, artifacts->metrics);
  return kOk;
}

int cmd_simulate_sweep(const SimulateOpts& opt) {
  if (!opt.config_path.empty() || !opt.topology_path.empty()) {
    return usage_error("a sweep builds its own topology per cell; drop --config/--topology");
  }
  auto plan = load_plan(opt.plan_path);
  if (!plan) return kDomainError;
  auto resolved = resolve_run_config(opt);
  if (!resolved) return kDomainError;
  RunConfig base = *resolved;
  if (base.crash_s < 0) base.crash_s = 4.0;

  const std::string prefix = "servers=";
  if (opt.sweep.rfind(prefix, 0) != 0) {
    return usage_error("sweep expects servers=N[,N...]");
  }
  std::vector<int> server_counts;
  if (!parse_int_list(opt.sweep.substr(prefix.size()), server_counts) || server_counts.empty()) {
    return usage_error("sweep expects servers=N[,N...]");
  }
  std::vector<int> scenario_list;
  if (!parse_int_list(opt.scenarios, scenario_list) || scenario_list.empty()) {
    return usage_error("scenarios expects a list like 1,2,3");
  }
  for (int n : server_counts) {
    if (n <= 0) return usage_error("server counts must be positive");
  }
  for (int s : scenario_list) {
    if (s < 1 || s > 3) return usage_error("scenarios must be within 1..3");
  }

  std::ostringstream csv;
  csv << "scenario,servers,recovery_latency_s,retransmissions_total\n";
  for (int scenario : scenario_list) {
    auto variant = scenario_plan(*plan, scenario);
    for (int servers : server_counts) {
      auto topology = araucaria::config::make_synthetic_topology(
          servers, static_cast<int>(variant.replica_count));
      auto generated = araucaria::config::generate_config(variant, topology);
      report("sweep", generated.diagnostics);
      if (!generated.bundle) return kDomainError;

      RunConfig rc = base;
      rc.servers = servers;
      rc.scenario = scenario;
      auto params = to_sim_params(rc, variant);
      if (auto error = attach_fault(*generated.bundle, rc, params)) return domain_error(*error);
      auto artifacts = run_simulation(variant, *generated.bundle, params);
      if (!artifacts) return kDomainError;

      csv << scenario << "," << servers << ",";
      if (artifacts->metrics.recovery_latency_s) {
        csv << format_seconds(*artifacts->metrics.recovery_latency_s, 6);
      }
      csv << "," << artifacts->metrics.retransmissions_total << "\n";

      if (opt.out_dir_set) {
        fs::path trace_path = fs::path(opt.out_dir) /
                              ("trace_s" + std::to_string(scenario) + "_n" +
                               std::to_string(servers) + ".jsonl");
        if (!write_file(trace_path, araucaria::sim::trace_to_jsonl(artifacts->trace))) {
          return domain_error("cannot write " + trace_path.string());
        }
      }
    }
  }

  std::cout << csv.str();
  if (!opt.csv_path.empty() && !write_file(opt.csv_path, csv.str())) {
    return domain_error("cannot write " + opt.csv_path);
  }
  return kOk;
}

struct BenchOpts {
  std::string counts = "100,200,400,800";
  int repeats = 5;
  std::string out_path;
};

int cmd_bench(const BenchOpts& opt) {
  std::vector<int> counts;
  if (!parse_int_list(opt.counts, counts)) return usage_error("counts expects a list like 100,200");
  for (int count : counts) {
    if (count <= 0) return usage_error("counts must be positive");
  }

  std::ostringstream csv;
  csv << "count,seconds\n";
  for (int count : counts) {
    std::string document = synthetic_intent_document(count);
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < std::max(1, opt.repeats); ++r) {
      auto batch = araucaria::intent::translate_batch(document);
      if (batch.stats.succeeded != static_cast<std::size_t>(count)) {
        report("bench", batch.diagnostics);
        return domain_error("synthetic batch failed to translate");
      }
      best = std::min(best, batch.stats.elapsed_seconds);
    }
    csv << count << "," << format_seconds(best, 9) << "\n";
  }

  std::cout << csv.str();
  if (!opt.out_path.empty() && !write_file(opt.out_path, csv.str())) {
    return domain_error("cannot write " + opt.out_path);
  }
  return kOk;
}

struct PipelineOpts {
  std::string manifest_path;
};

// Relative manifest paths resolve against the manifest's own directory so
// a checked in manifest works from any working directory.
int cmd_pipeline(const PipelineOpts& opt) {
  std::string text;
  if (!read_file(opt.manifest_path, text)) return usage_error("cannot read " + opt.manifest_path);
  json manifest = json::parse(text, nullptr, false);
  if (manifest.is_discarded() || !manifest.is_object()) {
    return domain_error("manifest is not a JSON object");
  }

  fs::path base_dir = fs::path(opt.manifest_path).parent_path();
  auto resolve = [&](const std::string& key, fs::path& out) -> bool {
    if (!manifest.contains(key) || !manifest[key].is_string()) return false;
    fs::path p = manifest[key].get<std::string>();
    out = p.is_absolute() ? p : base_dir / p;
    return true;
  };

  fs::path intent_path, p4_path, topology_path, output_dir;
  if (!resolve("intent_path", intent_path) || !resolve("p4_path", p4_path) ||
      !resolve("topology_path", topology_path) || !resolve("output_dir", output_dir)) {
    return usage_error("manifest needs intent_path, p4_path, topology_path and output_dir");
  }
  for (const auto& p : {intent_path, p4_path, topology_path}) {
    if (!fs::exists(p)) return usage_error("manifest path does not exist: " + p.string());
  }

  RunConfig rc;
  if (manifest.contains("params")) {
    std::string error;
    if (!apply_params_json(manifest["params"], rc, &error)) return domain_error(error);
  }
  if (manifest.contains("seed")) {
    try {
      rc.seed = manifest["seed"].get<std::uint64_t>();
    } catch (const json::exception&) {
      return domain_error("manifest seed must be an unsigned integer");
    }
  }

  // compile
  std::string source;
  if (!read_file(intent_path.string(), source)) {
    return usage_error("cannot read " + intent_path.string());
  }
  araucaria::intent::AnalyzeOptions analyze_options;
  if (rc.scenario == 1) {
    analyze_options.replication_mode.kind = araucaria::intent::ReplicationMode::Kind::kSnapshot;
  }
  auto parsed = araucaria::intent::parse_source(source);
  report(intent_path.string(), parsed.diagnostics);
  std::optional<araucaria::intent::RefinementPlan> plan;
  for (const auto& ast : parsed.intents) {
    auto analyzed = araucaria::intent::analyze(ast, analyze_options);
    report(intent_path.string(), analyzed.diagnostics);
    if (analyzed.plan && !plan) plan = analyzed.plan;
  }
  if (!plan) return domain_error("no intent in " + intent_path.string() + " translated cleanly");
  if (!write_file(output_dir / "plan.json",
                  araucaria::intent::plan_to_json(*plan) + std::string("\n"))) {
    return domain_error("cannot write into " + output_dir.string());
  }

  // instrument
  std::string p4_text;
  if (!read_file(p4_path.string(), p4_text)) return usage_error("cannot read " + p4_path.string());
  araucaria::p4::ParseOptions parse_options;
  parse_options.source_name = p4_path.string();
  auto program = araucaria::p4::parse_program(p4_text, parse_options);
  report(p4_path.string(), program.diagnostics);
  if (!program.program) return kDomainError;
  auto templates = araucaria::instrument::builtin_templates();
  report("templates", templates.diagnostics);
  if (!templates.templates) return kDomainError;
  auto woven = araucaria::instrument::instrument(*program.program, *plan, *templates.templates);
  report(p4_path.string(), woven.diagnostics);
  if (!woven.program) return kDomainError;
  if (!write_file(output_dir / "instrumented.p4s", araucaria::p4::emit_program(*woven.program)) ||
      !write_file(output_dir / "record.json",
                  araucaria::instrument::instrumentation_record_to_json(woven.record))) {
    return domain_error("cannot write into " + output_dir.string());
  }

  // configure
  auto topology = load_topology(topology_path.string());
  if (!topology) return kDomainError;
  auto generated = araucaria::config::generate_config(*plan, *topology);
  report(topology_path.string(), generated.diagnostics);
  if (!generated.bundle) return kDomainError;
  auto emitted = araucaria::config::emit_config(*generated.bundle);
  if (!write_file(output_dir / "config.json", emitted.json_text) ||
      !write_file(output_dir / "commands.cli", emitted.cli_text)) {
    return domain_error("cannot write into " + output_dir.string());
  }

  // simulate
  if (rc.servers <= 0) rc.servers = static_cast<int>(generated.bundle->server_list.size());
  auto params = to_sim_params(rc, *plan);
  if (auto error = attach_fault(*generated.bundle, rc, params)) return domain_error(*error);
  auto artifacts = run_simulation(*plan, *generated.bundle, params);
  if (!artifacts) return kDomainError;
  if (!write_run_outputs(output_dir, *artifacts)) {
    return domain_error("cannot write into " + output_dir.string());
  }
  std::cout << run_summary(rc, artifacts->metrics);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intent driven fault tolerance for in network computations"};
  app.require_subcommand(1);

  CompileOpts compile_opts;
  auto* compile = app.add_subcommand("compile", "Translate an intent document into plans");
  compile->add_option("intent", compile_opts.intent_path, "Intent source file")
      ->required()
      ->check(CLI::ExistingFile);
  compile->add_option("--out", compile_opts.out_path, "Plan JSON output file (default stdout)");
  compile->add_option("--registry", compile_opts.registry_path,
                      "Plan registry JSON to apply the intents to");
  compile->add_option("--replication", compile_opts.replication, "Replication mode for the plans")
      ->check(CLI::IsMember({"per-packet", "snapshot"}));
  compile->add_option("--snapshot-interval", compile_opts.snapshot_interval,
                      "Snapshot interval in seconds")
      ->check(CLI::PositiveNumber);

  InstrumentOpts instrument_opts;
  auto* instrument = app.add_subcommand("instrument", "Weave fault tolerance into a program");
  instrument->add_option("program", instrument_opts.p4_path, "Program source file")
      ->required()
      ->check(CLI::ExistingFile);
  instrument->add_option("plan", instrument_opts.plan_path, "Plan JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  instrument->add_option("--out", instrument_opts.out_path,
                         "Instrumented program output file (default stdout)");
  instrument->add_option("--record", instrument_opts.record_path,
                         "Instrumentation record JSON output file");
  instrument->add_option("--templates", instrument_opts.templates_dir,
                         "Directory holding alternate template fragments")
      ->check(CLI::ExistingDirectory);

  ConfigureOpts configure_opts;
  auto* configure = app.add_subcommand("configure", "Generate switch configuration for a plan");
  configure->add_option("plan", configure_opts.plan_path, "Plan JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  configure->add_option("topology", configure_opts.topology_path, "Topology JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  configure->add_option("--out-dir", configure_opts.out_dir,
                        "Directory for config.json and commands.cli");

  SimulateOpts simulate_opts;
  auto* simulate = app.add_subcommand("simulate", "Run the fault tolerance simulation");
  simulate->add_option("plan", simulate_opts.plan_path, "Plan JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--config", simulate_opts.config_path,
                       "Configuration bundle JSON (default: generated)")
      ->check(CLI::ExistingFile);
  simulate->add_option("--topology", simulate_opts.topology_path,
                       "Topology JSON (default: synthetic)")
      ->check(CLI::ExistingFile);
  simulate->add_option("--params", simulate_opts.params_path, "Run parameters JSON file")
      ->check(CLI::ExistingFile);
  simulate->add_option("--out-dir", simulate_opts.out_dir,
                       "Directory for trace.jsonl, metrics.json and rps.csv");
  simulate->add_option("--servers", simulate_opts.cli.servers, "Server count")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--rate", simulate_opts.cli.rate, "Per server send rate in packets per second")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--scenario", simulate_opts.cli.scenario, "Recovery scenario")
      ->check(CLI::Range(1, 3));
  simulate->add_option("--crash", simulate_opts.cli.crash_s,
                       "Crash the main at this many seconds (0 disables)");
  simulate->add_option("--drop-count", simulate_opts.cli.drop_count,
                       "Replication packets dropped before the crash")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--horizon", simulate_opts.cli.horizon_s, "Simulated seconds to run")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--stop-sending", simulate_opts.cli.stop_s,
                       "Servers stop sending at this many seconds");
  simulate->add_option("--seed", simulate_opts.cli.seed, "Seed recorded in the trace");
  simulate->add_option("--sweep", simulate_opts.sweep,
                       "Sweep a server count grid, e.g. servers=2,4,6,8");
  simulate->add_option("--scenarios", simulate_opts.scenarios,
                       "Scenarios for the sweep, e.g. 1,2,3");
  simulate->add_option("--csv", simulate_opts.csv_path, "Also write the sweep CSV to this file");

  BenchOpts bench_opts;
  auto* bench = app.add_subcommand("bench", "Time intent translation over synthetic batches");
  bench->add_option("--counts", bench_opts.counts, "Batch sizes, e.g. 100,200,400,800");
  bench->add_option("--repeats", bench_opts.repeats, "Repetitions per batch size (best is kept)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_opts.out_path, "Also write the CSV to this file");

  PipelineOpts pipeline_opts;
  auto* pipeline = app.add_subcommand("pipeline", "Run compile, instrument, configure, simulate");
  pipeline->add_option("manifest", pipeline_opts.manifest_path, "Pipeline manifest JSON")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  if (compile->parsed()) return cmd_compile(compile_opts);
  if (instrument->parsed()) return cmd_instrument(instrument_opts);
  if (configure->parsed()) return cmd_configure(configure_opts);
  if (simulate->parsed()) {
    simulate_opts.set_servers = simulate->count("--servers") > 0;
    simulate_opts.set_rate = simulate->count("--rate") > 0;
    simulate_opts.set_scenario = simulate->count("--scenario") > 0;
    simulate_opts.set_crash = simulate->count("--crash") > 0;
    simulate_opts.set_drops = simulate->count("--drop-count") > 0;
    simulate_opts.set_horizon = simulate->count("--horizon") > 0;
    simulate_opts.set_stop = simulate->count("--stop-sending") > 0;
    simulate_opts.set_seed = simulate->count("--seed") > 0;
    simulate_opts.out_dir_set = simulate->count("--out-dir") > 0;
    if (!simulate_opts.sweep.empty()) return cmd_simulate_sweep(simulate_opts);
    return cmd_simulate_single(simulate_opts);
  }
  if (bench->parsed()) return cmd_bench(bench_opts);
  if (pipeline->parsed()) return cmd_pipeline(pipeline_opts);
  return kUsageError;
}
