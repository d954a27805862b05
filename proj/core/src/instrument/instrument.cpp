// SPDX-License-Identifier: Apache-2.0

#include "araucaria/instrument/instrument.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "araucaria/p4/validate.hpp"

namespace araucaria::instrument {

namespace {

std::string araucaria_state_name(int level) {
  if (level <= 1) return p4::kReservedStateName;
  return std::string(p4::kReservedStateName) + "_" + std::to_string(level);
}

std::string sanitize_key(const std::string& key) {
  std::string out;
  for (char c : key) {
    out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  }
  return out.empty() ? std::string("default") : out;
}

// Chain depth of each state: the largest number of computation states met
// on any path from start up to and including the state itself. Requires an
// acyclic graph; returns false when a cycle blocks the topological pass.
bool compute_inc_depths(const p4::ParserDecl& parser, std::map<std::string, int>& depth_out) {
  std::map<std::string, std::vector<std::string>> successors;
  std::map<std::string, int> indegree;
  for (const auto& state : parser.states) {
    indegree.emplace(state.name, 0);
  }
  for (const auto& state : parser.states) {
    for (const auto& arm : state.transitions) {
      if (indegree.count(arm.target) == 0) continue;  // accept/reject or dangling
      successors[state.name].push_back(arm.target);
      ++indegree[arm.target];
    }
  }

  std::vector<std::string> queue;
  for (const auto& [name, deg] : indegree) {
    if (deg == 0) queue.push_back(name);
  }
  std::map<std::string, int> depth;
  for (const auto& state : parser.states) {
    depth[state.name] = p4::is_inc_state(state.name) ? 1 : 0;
  }
  std::size_t processed = 0;
  while (!queue.empty()) {
    std::string name = queue.back();
    queue.pop_back();
    ++processed;
    int self = depth[name];
    for (const auto& succ : successors[name]) {
      int inc = p4::is_inc_state(succ) ? 1 : 0;
      depth[succ] = std::max(depth[succ], self + inc);
      if (--indegree[succ] == 0) queue.push_back(succ);
    }
  }
  if (processed != parser.states.size()) return false;
  depth_out = std::move(depth);
  return true;
}

p4::Statement make_merge_dispatch() {
  p4::IfStmt dispatch;
  dispatch.condition = "araucaria_meta.araucaria_consistency == 2";
  dispatch.then_branch.push_back(p4::Statement{p4::ActionCallStmt{"araucaria_merge", {}}});
  return p4::Statement{std::move(dispatch)};
}

p4::ActionDecl make_merge_action(intent::MergeFn merge) {
  p4::ActionDecl action;
  action.name = "araucaria_merge";
  p4::AssignStmt assign;
  assign.lhs = "hdr.value";
  if (merge == intent::MergeFn::kMaxHdrValue) {
    assign.rhs = "max(hdr.value, araucaria_meta.araucaria_merge_operand)";
  } else {
    assign.rhs = "hdr.value + araucaria_meta.araucaria_merge_operand";
  }
  action.body.push_back(p4::Statement{std::move(assign)});
  return action;
}

}  // namespace

bool is_instrumented(const p4::Program& program) {
  auto prefixed = [](const std::string& name) {
    return name.rfind(p4::kReservedPrefix, 0) == 0;
  };
  for (const auto& type : program.types) {
    if (prefixed(type.name)) return true;
  }
  if (program.has_parser) {
    for (const auto& state : program.parser.states) {
      if (state.name.rfind(p4::kReservedStateName, 0) == 0) return true;
    }
  }
  for (const auto& control : program.controls) {
    if (prefixed(control.name)) return true;
    for (const auto& reg : control.registers) {
      if (prefixed(reg.name)) return true;
    }
    for (const auto& action : control.actions) {
      if (prefixed(action.name)) return true;
    }
    for (const auto& table : control.tables) {
      if (prefixed(table.name)) return true;
    }
  }
  return false;
}

InstrumentResult instrument_declarations(const p4::Program& program,
                                         const intent::RefinementPlan& plan,
                                         const TemplateSet& templates) {
  (void)plan;
  InstrumentResult result;
  if (is_instrumented(program)) {
    result.record.already_instrumented = true;
    result.diagnostics.push_back(
        make_error({}, "ALREADY_INSTRUMENTED", "program already carries fault tolerance declarations"));
    return result;
  }
  p4::Program out = program;
  out.types.insert(out.types.begin(), templates.declarations.begin(), templates.declarations.end());
  result.record.inserted_declarations = static_cast<int>(templates.declarations.size());
  result.program = std::move(out);
  return result;
}

InstrumentResult instrument_parser(const p4::Program& program, const intent::RefinementPlan& plan,
                                   const TemplateSet& templates) {
  (void)plan;
  InstrumentResult result;
  if (!program.has_parser) {
    result.diagnostics.push_back(make_error({}, "NO_PARSER", "program declares no parser"));
    return result;
  }

  std::vector<const p4::ParserState*> inc_states;
  for (const auto& state : program.parser.states) {
    if (p4::is_inc_state(state.name) &&
        state.name.rfind(p4::kReservedStateName, 0) != 0) {
      inc_states.push_back(&state);
    }
  }
  if (inc_states.empty()) {
    result.diagnostics.push_back(make_error(
        {}, "NO_INC_STATE",
        "parser has no computation state to attach to; only standard protocol states found"));
    return result;
  }

  std::map<std::string, int> depth;
  if (!compute_inc_depths(program.parser, depth)) {
    result.diagnostics.push_back(
        make_error({}, "CYCLE", "parser graph has a cycle; refusing to rewire"));
    return result;
  }

  // group computation states by chain depth, keeping declaration order
  std::map<int, std::vector<const p4::ParserState*>> levels;
  for (const auto* state : inc_states) {
    levels[std::max(depth[state->name], 1)].push_back(state);
  }

  p4::Program out = program;
  std::vector<p4::ParserState> added;
  for (const auto& [level, members] : levels) {
    p4::ParserState shared = templates.araucaria_state;
    shared.name = araucaria_state_name(level);
    shared.select_expr.clear();
    shared.transitions.clear();

    if (members.size() == 1) {
      // single parent: the shared state takes the former transition
      // structure verbatim
      const p4::ParserState& member = *members[0];
      shared.select_expr = member.select_expr;
      shared.transitions = member.transitions;
      for (auto& arm : shared.transitions) arm.synthetic_parent = member.name;
    } else {
      shared.select_expr = "araucaria_meta.araucaria_parent";
      std::set<std::string> used_keys;
      for (const auto* member : members) {
        for (const auto& former : member->transitions) {
          p4::Transition arm;
          arm.target = former.target;
          arm.synthetic_parent = member->name;
          std::string base = "araucaria_from_" + member->name + "__k_" +
                             (former.is_default ? "default" : sanitize_key(former.key));
          std::string key = base;
          for (int bump = 2; used_keys.count(key); ++bump) {
            key = base + "_" + std::to_string(bump);
          }
          used_keys.insert(key);
          arm.key = key;
          shared.transitions.push_back(std::move(arm));
        }
      }
    }
    added.push_back(std::move(shared));
  }

  int redirected = 0;
  for (auto& state : out.parser.states) {
    if (!p4::is_inc_state(state.name) ||
        state.name.rfind(p4::kReservedStateName, 0) == 0) {
      continue;
    }
    int level = std::max(depth[state.name], 1);
    state.select_expr.clear();
    state.transitions.clear();
    p4::Transition arm;
    arm.target = araucaria_state_name(level);
    state.transitions.push_back(std::move(arm));
    ++redirected;
  }
  for (auto& state : added) out.parser.states.push_back(std::move(state));

  result.record.redirected_transitions = redirected;
  result.program = std::move(out);
  return result;
}

InstrumentResult instrument_control(const p4::Program& program, const intent::RefinementPlan& plan,
                                    const TemplateSet& templates) {
  InstrumentResult result;
  if (program.controls.empty()) {
    result.diagnostics.push_back(
        make_error({}, "NO_CONTROL", "program declares no control block to wrap"));
    return result;
  }

  p4::Program out = program;
  p4::ControlBlock& control = out.controls.front();

  auto append_decls = [&control](const p4::ControlBlock& fragment) {
    control.registers.insert(control.registers.end(), fragment.registers.begin(),
                             fragment.registers.end());
    control.actions.insert(control.actions.end(), fragment.actions.begin(),
                           fragment.actions.end());
    control.tables.insert(control.tables.end(), fragment.tables.begin(), fragment.tables.end());
  };
  append_decls(templates.preparation);
  append_decls(templates.completion);
  if (plan.merge) control.actions.push_back(make_merge_action(*plan.merge));

  std::vector<p4::Statement> original = std::move(control.apply);
  std::vector<p4::Statement> woven(templates.preparation.apply.begin(),
                                   templates.preparation.apply.end() - 1);
  if (plan.merge) woven.push_back(make_merge_dispatch());
  p4::Statement guard = templates.preparation.apply.back();
  std::get<p4::IfStmt>(guard.node).then_branch = std::move(original);
  woven.push_back(std::move(guard));
  woven.insert(woven.end(), templates.completion.apply.begin(), templates.completion.apply.end());
  control.apply = std::move(woven);

  result.record.wrapped_apply_blocks = 1;
  result.program = std::move(out);
  return result;
}

InstrumentResult instrument(const p4::Program& program, const intent::RefinementPlan& plan,
                            const TemplateSet& templates) {
  InstrumentResult result;
  if (is_instrumented(program)) {
    result.record.already_instrumented = true;
    result.diagnostics.push_back(
        make_error({}, "ALREADY_INSTRUMENTED", "refusing to weave twice"));
    return result;
  }

  p4::ValidationReport input_report = p4::validate_program(program);
  if (!input_report.ok()) {
    result.diagnostics = std::move(input_report.diagnostics);
    return result;
  }

  InstrumentResult step1 = instrument_declarations(program, plan, templates);
  if (!step1.ok()) return step1;
  InstrumentResult step2 = instrument_parser(*step1.program, plan, templates);
  if (!step2.ok()) {
    step2.record.inserted_declarations = step1.record.inserted_declarations;
    return step2;
  }
  InstrumentResult step3 = instrument_control(*step2.program, plan, templates);
  if (!step3.ok()) {
    step3.record.inserted_declarations = step1.record.inserted_declarations;
    step3.record.redirected_transitions = step2.record.redirected_transitions;
    return step3;
  }

  result.record.inserted_declarations = step1.record.inserted_declarations;
  result.record.redirected_transitions = step2.record.redirected_transitions;
  result.record.wrapped_apply_blocks = step3.record.wrapped_apply_blocks;

  // structural re-check with reserved names allowed
  p4::ValidationReport output_report = p4::validate_program(*step3.program, "");
  if (!output_report.ok()) {
    result.diagnostics = std::move(output_report.diagnostics);
    result.diagnostics.push_back(make_error(
        {}, "WEAVE_INVARIANT", "instrumented program failed validation; this is a weaver bug"));
    return result;
  }

  result.program = std::move(step3.program);
  return result;
}

std::string instrumentation_record_to_json(const InstrumentationRecord& record) {
  nlohmann::json j;
  j["inserted_declarations"] = record.inserted_declarations;
  j["redirected_transitions"] = record.redirected_transitions;
  j["wrapped_apply_blocks"] = record.wrapped_apply_blocks;
  j["already_instrumented"] = record.already_instrumented;
  return j.dump(2) + "\n";
}

}  // namespace araucaria::instrument
