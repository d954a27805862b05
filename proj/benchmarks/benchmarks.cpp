// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "araucaria/config/generate.hpp"
#include "araucaria/config/topology.hpp"
#include "araucaria/instrument/instrument.hpp"
#include "araucaria/intent/analyzer.hpp"
#include "araucaria/intent/batch.hpp"
#include "araucaria/intent/parser.hpp"
#include "araucaria/p4/parser.hpp"
#include "araucaria/sim/faults.hpp"
#include "araucaria/sim/simulation.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

const std::string& netgvt_source() {
  static std::string source = read_file(std::string(ARAUCARIA_SAMPLES_DIR) + "/netgvt.p4s");
  return source;
}

const araucaria::intent::RefinementPlan& sync_plan() {
  static araucaria::intent::RefinementPlan plan = [] {
    auto source = read_file(std::string(ARAUCARIA_SAMPLES_DIR) + "/sync.intent");
    auto parsed = araucaria::intent::parse_source(source);
    if (!parsed.ok()) throw std::runtime_error("sample intent does not parse");
    auto analyzed = araucaria::intent::analyze(parsed.intents.front());
    if (!analyzed.ok()) throw std::runtime_error("sample intent does not analyze");
    return *analyzed.plan;
  }();
  return plan;
}

const araucaria::instrument::TemplateSet& templates() {
  static araucaria::instrument::TemplateSet set = [] {
    auto loaded = araucaria::instrument::builtin_templates();
    if (!loaded.ok()) throw std::runtime_error("builtin templates failed to load");
    return *loaded.templates;
  }();
  return set;
}

std::string intent_document(int count) {
  std::ostringstream out;
  for (int i = 0; i < count; ++i) {
    out << "Create intent bench" << i << "{\n"
        << "    functionality: synchronization [\n"
        << "        size: " << (i % 7 + 1) << "\n"
        << "    ]\n"
        << "    availability: tolerates " << (i % 3 + 1) << " failures,\n"
        << "    consistency: " << (i % 2 == 0 ? "strong" : "eventual") << ",\n"
        << "}\n";
  }
  return out.str();
}

void BM_TranslateBatch(benchmark::State& state) {
  const auto count = static_cast<int>(state.range(0));
  const auto document = intent_document(count);
  for (auto _ : state) {
    auto result = araucaria::intent::translate_batch(document);
    if (result.plans.size() != static_cast<std::size_t>(count)) {
      state.SkipWithError("batch translation failed");
      return;
    }
    benchmark::DoNotOptimize(result);
  }
  state.SetItemsProcessed(state.iterations() * count);
}
BENCHMARK(BM_TranslateBatch)->Arg(100)->Arg(200)->Arg(400)->Arg(800);

void BM_ParseProgram(benchmark::State& state) {
  const auto& source = netgvt_source();
  for (auto _ : state) {
    auto result = araucaria::p4::parse_program(source);
    if (!result.ok()) {
      state.SkipWithError("sample program does not parse");
      return;
    }
    benchmark::DoNotOptimize(result);
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(source.size()));
}
BENCHMARK(BM_ParseProgram);

void BM_InstrumentProgram(benchmark::State& state) {
  auto parsed = araucaria::p4::parse_program(netgvt_source());
  if (!parsed.ok()) {
    state.SkipWithError("sample program does not parse");
    return;
  }
  for (auto _ : state) {
    auto woven = araucaria::instrument::instrument(*parsed.program, sync_plan(), templates());
    if (!woven.ok()) {
      state.SkipWithError("weaving failed");
      return;
    }
    benchmark::DoNotOptimize(woven);
  }
}
BENCHMARK(BM_InstrumentProgram);

void BM_SimulateRecovery(benchmark::State& state) {
  const auto servers = static_cast<int>(state.range(0));
  auto plan = sync_plan();
  auto topology = araucaria::config::make_synthetic_topology(servers, plan.replica_count);
  auto generated = araucaria::config::generate_config(plan, topology);
  if (!generated.ok()) {
    state.SkipWithError("config generation failed");
    return;
  }
  araucaria::sim::SimParams params;
  params.servers = servers;
  params.scenario = araucaria::sim::Scenario::kPerPacketReplay;
  params.fault = araucaria::sim::make_drop_then_crash(servers, params.rate_pps, 4000000, "main",
                                                      "r1");
  for (auto _ : state) {
    auto built = araucaria::sim::build_scenario(plan, *generated.bundle, params);
    if (!built.simulation) {
      state.SkipWithError("scenario construction failed");
      return;
    }
    auto trace = built.simulation->run();
    benchmark::DoNotOptimize(trace);
  }
}
BENCHMARK(BM_SimulateRecovery)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
