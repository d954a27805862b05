// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "araucaria/diagnostics.hpp"
#include "araucaria/intent/ast.hpp"

namespace araucaria::intent {

enum class ConsistencyMode { kLinearizable, kStrongEventual, kEventual };

enum class BuildingBlock { kFailureDetector, kReplication, kStateCollection, kRecovery };

struct ReplicationMode {
  enum class Kind { kPerPacket, kSnapshot };
  Kind kind = Kind::kPerPacket;
  double snapshot_interval_s = 4.0;  // meaningful for kSnapshot

  bool operator==(const ReplicationMode&) const = default;
};

struct RefinementPlan {
  std::string intent_name;
  FunctionalitySpec functionality;
  std::int64_t replica_count = 1;  // replicas beyond the main
  ConsistencyMode consistency_mode = ConsistencyMode::kEventual;
  std::optional<MergeFn> merge;
  std::vector<BuildingBlock> building_blocks;  // fixed order, all four
  ReplicationMode replication_mode;

  bool operator==(const RefinementPlan&) const = default;
};

struct AnalyzeOptions {
  // Replication mode is not expressible in the intent language; it is a
  // plan-level knob that callers (CLI, scenarios) may override.
  ReplicationMode replication_mode = {};
};

struct AnalyzeResult {
  std::optional<RefinementPlan> plan;  // present iff no error diagnostics
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return plan.has_value(); }
};

// Semantic analysis: resolves the consistency mode, applies defaults, checks
// requirement uniqueness and merge idempotence. Pure function of its inputs.
AnalyzeResult analyze(const IntentAst& ast, const AnalyzeOptions& options = {});

const char* consistency_mode_name(ConsistencyMode mode);
const char* building_block_name(BuildingBlock block);
std::vector<BuildingBlock> standard_building_blocks();

// Plan <-> JSON (used by the plan registry and the CLI).
std::string plan_to_json(const RefinementPlan& plan);
std::optional<RefinementPlan> plan_from_json(const std::string& json_text,
                                             std::vector<Diagnostic>* diags = nullptr);

}  // namespace araucaria::intent
