// SPDX-License-Identifier: Apache-2.0

#include "araucaria/intent/analyzer.hpp"

#include <nlohmann/json.hpp>

namespace araucaria::intent {

namespace {

using nlohmann::json;

constexpr std::int64_t kDefaultToleratedFailures = 1;

struct GatheredRequirements {
  std::optional<AvailabilityReq> availability;
  std::optional<ConsistencyReq> consistency;
  std::vector<Diagnostic> diagnostics;
};

GatheredRequirements gather(const IntentAst& ast) {
  GatheredRequirements out;
  for (const auto& req : ast.requirements) {
    if (req.is_availability()) {
      if (out.availability) {
        out.diagnostics.push_back(make_error(req.loc, "DUPLICATE_REQUIREMENT",
                                             "availability requirement given more than once"));
      } else {
        out.availability = std::get<AvailabilityReq>(req.value);
      }
    } else {
      if (out.consistency) {
        out.diagnostics.push_back(make_error(req.loc, "DUPLICATE_REQUIREMENT",
                                             "consistency requirement given more than once"));
      } else {
        out.consistency = std::get<ConsistencyReq>(req.value);
      }
    }
  }
  return out;
}

}  // namespace

const char* consistency_mode_name(ConsistencyMode mode) {
  switch (mode) {
    case ConsistencyMode::kLinearizable:
      return "linearizable";
    case ConsistencyMode::kStrongEventual:
      return "strong-eventual";
    case ConsistencyMode::kEventual:
      return "eventual";
  }
  return "?";
}

const char* building_block_name(BuildingBlock block) {
  switch (block) {
    case BuildingBlock::kFailureDetector:
      return "failure-detector";
    case BuildingBlock::kReplication:
      return "replication";
    case BuildingBlock::kStateCollection:
      return "state-collection";
    case BuildingBlock::kRecovery:
      return "recovery";
  }
  return "?";
}

std::vector<BuildingBlock> standard_building_blocks() {
  return {BuildingBlock::kFailureDetector, BuildingBlock::kReplication,
          BuildingBlock::kStateCollection, BuildingBlock::kRecovery};
}

AnalyzeResult analyze(const IntentAst& ast, const AnalyzeOptions& options) {
  AnalyzeResult result;
  GatheredRequirements reqs = gather(ast);
  result.diagnostics = std::move(reqs.diagnostics);

  std::int64_t tolerated =
      reqs.availability ? reqs.availability->tolerated_failures : kDefaultToleratedFailures;
  if (tolerated == 0 && ast.operation == Operation::kCreate) {
    result.diagnostics.push_back(
        make_warning({}, "NO_FAULT_TOLERANCE",
                     "intent tolerates zero failures; no replicas will be provisioned"));
  }

  ConsistencyReq consistency{ConsistencyLevel::kEventual, std::nullopt};
  if (reqs.consistency) consistency = *reqs.consistency;

  ConsistencyMode mode = ConsistencyMode::kEventual;
  if (consistency.level == ConsistencyLevel::kStrong) {
    if (!consistency.merge) {
      mode = ConsistencyMode::kLinearizable;
    } else if (*consistency.merge == MergeFn::kMaxHdrValue) {
      mode = ConsistencyMode::kStrongEventual;
    } else {
      // add is not idempotent: replayed packets would be double counted, so
      // it cannot back a convergent strong mode.
      result.diagnostics.push_back(
          make_error({}, "MERGE_NOT_IDEMPOTENT",
                     "merge function 'add' is not idempotent and cannot provide "
                     "strong convergence; use max[hdr.value] or eventual consistency"));
    }
  } else if (consistency.merge && *consistency.merge == MergeFn::kAdd) {
    result.diagnostics.push_back(
        make_warning({}, "MERGE_NOT_IDEMPOTENT",
                     "merge function 'add' is not idempotent; duplicate deliveries "
                     "during recovery may be applied twice"));
  }

  if (has_errors(result.diagnostics)) return result;

  RefinementPlan plan;
  plan.intent_name = ast.name;
  plan.functionality = ast.functionality;
  plan.replica_count = tolerated;
  plan.consistency_mode = mode;
  plan.merge = consistency.merge;
  plan.building_blocks = standard_building_blocks();
  plan.replication_mode = options.replication_mode;
  result.plan = std::move(plan);
  return result;
}

std::string plan_to_json(const RefinementPlan& plan) {
  json j;
  j["intent_name"] = plan.intent_name;
  json func;
  func["name"] = plan.functionality.fname;
  json inputs = json::array();
  for (const auto& in : plan.functionality.inputs) {
    json entry;
    entry["name"] = in.name;
    switch (in.value.kind) {
      case InputValue::Kind::kInt:
        entry["value"] = in.value.int_value;
        break;
      case InputValue::Kind::kIdent:
        entry["value"] = in.value.text;
        entry["ident"] = true;
        break;
      case InputValue::Kind::kString:
        entry["value"] = in.value.text;
        break;
    }
    inputs.push_back(std::move(entry));
  }
  func["inputs"] = std::move(inputs);
  j["functionality"] = std::move(func);
  j["replica_count"] = plan.replica_count;
  j["consistency_mode"] = consistency_mode_name(plan.consistency_mode);
  if (plan.merge) j["merge"] = merge_fn_name(*plan.merge);
  json blocks = json::array();
  for (auto b : plan.building_blocks) blocks.push_back(building_block_name(b));
  j["building_blocks"] = std::move(blocks);
  json repl;
  repl["kind"] =
      plan.replication_mode.kind == ReplicationMode::Kind::kPerPacket ? "per-packet" : "snapshot";
  if (plan.replication_mode.kind == ReplicationMode::Kind::kSnapshot) {
    repl["interval_s"] = plan.replication_mode.snapshot_interval_s;
  }
  j["replication_mode"] = std::move(repl);
  return j.dump(2) + "\n";
}

std::optional<RefinementPlan> plan_from_json(const std::string& json_text,
                                             std::vector<Diagnostic>* diags) {
  auto fail = [&](const std::string& msg) -> std::optional<RefinementPlan> {
    if (diags) diags->push_back(make_error({}, "BAD_PLAN_JSON", msg));
    return std::nullopt;
  };

  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded()) return fail("plan is not valid JSON");
  if (!j.is_object()) return fail("plan root must be an object");

  RefinementPlan plan;
  try {
    plan.intent_name = j.at("intent_name").get<std::string>();
    const json& func = j.at("functionality");
    plan.functionality.fname = func.at("name").get<std::string>();
    for (const auto& entry : func.value("inputs", json::array())) {
      FunctionalityInput in;
      in.name = entry.at("name").get<std::string>();
      const json& v = entry.at("value");
      if (v.is_number_integer()) {
        in.value.kind = InputValue::Kind::kInt;
        in.value.int_value = v.get<std::int64_t>();
      } else if (entry.value("ident", false)) {
        in.value.kind = InputValue::Kind::kIdent;
        in.value.text = v.get<std::string>();
      } else {
        in.value.kind = InputValue::Kind::kString;
        in.value.text = v.get<std::string>();
      }
      plan.functionality.inputs.push_back(std::move(in));
    }
    plan.replica_count = j.at("replica_count").get<std::int64_t>();

    std::string mode = j.at("consistency_mode").get<std::string>();
    if (mode == "linearizable") {
      plan.consistency_mode = ConsistencyMode::kLinearizable;
    } else if (mode == "strong-eventual") {
      plan.consistency_mode = ConsistencyMode::kStrongEventual;
    } else if (mode == "eventual") {
      plan.consistency_mode = ConsistencyMode::kEventual;
    } else {
      return fail("unknown consistency_mode '" + mode + "'");
    }

    if (j.contains("merge")) {
      std::string merge = j.at("merge").get<std::string>();
      if (merge == merge_fn_name(MergeFn::kMaxHdrValue)) {
        plan.merge = MergeFn::kMaxHdrValue;
      } else if (merge == merge_fn_name(MergeFn::kAdd)) {
        plan.merge = MergeFn::kAdd;
      } else {
        return fail("unknown merge function '" + merge + "'");
      }
    }

    plan.building_blocks = standard_building_blocks();

    if (j.contains("replication_mode")) {
      const json& repl = j.at("replication_mode");
      std::string kind = repl.at("kind").get<std::string>();
      if (kind == "per-packet") {
        plan.replication_mode.kind = ReplicationMode::Kind::kPerPacket;
      } else if (kind == "snapshot") {
        plan.replication_mode.kind = ReplicationMode::Kind::kSnapshot;
        plan.replication_mode.snapshot_interval_s = repl.value("interval_s", 4.0);
      } else {
        return fail("unknown replication mode '" + kind + "'");
      }
    }
  } catch (const json::exception& e) {
    return fail(std::string("malformed plan: ") + e.what());
  }
  return plan;
}

}  // namespace araucaria::intent
