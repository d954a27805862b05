// SPDX-License-Identifier: Apache-2.0

#include "araucaria/p4/validate.hpp"

#include <functional>
#include <map>
#include <set>

namespace araucaria::p4 {

namespace {

bool is_sink(const std::string& name) { return name == "accept" || name == "reject"; }

class Validator {
 public:
  Validator(const Program& program, const std::string& prefix)
      : program_(program), prefix_(prefix) {}

  ValidationReport run() {
    check_parser();
    check_controls();
    if (!prefix_.empty()) check_reserved();
    return std::move(report_);
  }

 private:
  void error(const std::string& code, const std::string& message) {
    report_.diagnostics.push_back(make_error({}, code, message));
  }

  void check_parser() {
    if (!program_.has_parser) {
      error("NO_PARSER", "program declares no parser");
      return;
    }
    const ParserDecl& parser = program_.parser;
    std::set<std::string> state_names;
    for (const auto& state : parser.states) state_names.insert(state.name);
    if (!state_names.count("start")) {
      error("NO_START", "parser '" + parser.name + "' has no start state");
    }

    std::set<std::string> header_bases;
    for (const auto& type : program_.types) {
      if (type.kind == DeclKind::kHeader) header_bases.insert(header_instance_base(type.name));
    }

    for (const auto& state : parser.states) {
      for (const auto& extract : state.extracts) {
        if (!header_bases.count(extract_base(extract))) {
          error("UNKNOWN_HEADER",
                "state '" + state.name + "' extracts '" + extract + "' but no header is declared for it");
        }
      }
      int defaults = 0;
      std::set<std::string> keys;
      for (const auto& arm : state.transitions) {
        if (!is_sink(arm.target) && !state_names.count(arm.target)) {
          error("DANGLING_STATE",
                "state '" + state.name + "' transitions to undeclared state '" + arm.target + "'");
        }
        if (arm.is_default) {
          ++defaults;
        } else if (!state.select_expr.empty()) {
          if (!keys.insert(arm.key).second) {
            error("DUPLICATE_SELECT_KEY",
                  "state '" + state.name + "' selects key '" + arm.key + "' twice");
          }
        }
      }
      if (defaults > 1) {
        error("MULTIPLE_DEFAULT", "state '" + state.name + "' has more than one default arm");
      }
    }

    check_acyclic(parser, state_names);
  }

  void check_acyclic(const ParserDecl& parser, const std::set<std::string>& state_names) {
    // colors: 0 unvisited, 1 on stack, 2 done
    std::map<std::string, int> color;
    std::function<bool(const std::string&)> dfs = [&](const std::string& name) -> bool {
      int& c = color[name];
      if (c == 1) {
        error("CYCLE", "parser graph has a cycle through state '" + name + "'");
        return false;
      }
      if (c == 2) return true;
      c = 1;
      const ParserState* state = parser.find_state(name);
      if (state != nullptr) {
        for (const auto& arm : state->transitions) {
          if (is_sink(arm.target) || !state_names.count(arm.target)) continue;
          if (!dfs(arm.target)) return false;
        }
      }
      c = 2;
      return true;
    };
    for (const auto& state : parser.states) {
      if (!dfs(state.name)) return;  // one cycle report is enough
    }
  }

  void check_statements(const ControlBlock& control, const std::vector<Statement>& stmts,
                        const std::set<std::string>& registers, const std::set<std::string>& tables,
                        const std::set<std::string>& actions) {
    for (const auto& stmt : stmts) {
      if (const auto* read = std::get_if<RegisterReadStmt>(&stmt.node)) {
        if (!registers.count(read->reg)) {
          error("UNKNOWN_REGISTER",
                "control '" + control.name + "' reads undeclared register '" + read->reg + "'");
        }
      } else if (const auto* write = std::get_if<RegisterWriteStmt>(&stmt.node)) {
        if (!registers.count(write->reg)) {
          error("UNKNOWN_REGISTER",
                "control '" + control.name + "' writes undeclared register '" + write->reg + "'");
        }
      } else if (const auto* table = std::get_if<TableApplyStmt>(&stmt.node)) {
        if (!tables.count(table->table)) {
          error("UNKNOWN_TABLE",
                "control '" + control.name + "' applies undeclared table '" + table->table + "'");
        }
      } else if (const auto* call = std::get_if<ActionCallStmt>(&stmt.node)) {
        if (!actions.count(call->action)) {
          error("UNKNOWN_ACTION",
                "control '" + control.name + "' calls undeclared action '" + call->action + "'");
        }
      } else if (const auto* iff = std::get_if<IfStmt>(&stmt.node)) {
        check_statements(control, iff->then_branch, registers, tables, actions);
        check_statements(control, iff->else_branch, registers, tables, actions);
      }
    }
  }

  void check_controls() {
    for (const auto& control : program_.controls) {
      std::set<std::string> registers, tables, actions;
      for (const auto& reg : control.registers) registers.insert(reg.name);
      for (const auto& table : control.tables) tables.insert(table.name);
      for (const auto& action : control.actions) actions.insert(action.name);

      for (const auto& table : control.tables) {
        for (const auto& action_name : table.actions) {
          if (!actions.count(action_name)) {
            error("UNKNOWN_ACTION", "table '" + table.name + "' lists undeclared action '" +
                                        action_name + "'");
          }
        }
        if (!table.default_action.empty()) {
          bool listed = false;
          for (const auto& action_name : table.actions) {
            if (action_name == table.default_action) listed = true;
          }
          if (!listed) {
            error("DEFAULT_NOT_LISTED", "table '" + table.name + "' defaults to '" +
                                            table.default_action +
                                            "' which is not in its actions list");
          }
        }
      }

      for (const auto& action : control.actions) {
        check_statements(control, action.body, registers, tables, actions);
      }
      check_statements(control, control.apply, registers, tables, actions);
    }
  }

  void flag_reserved(const std::string& ident, const std::string& what) {
    if (ident.rfind(prefix_, 0) == 0) {
      report_.reserved_prefix_violations.push_back(ident);
      error("RESERVED_IDENTIFIER", what + " '" + ident + "' uses the reserved prefix '" + prefix_ + "'");
    }
  }

  void check_reserved() {
    for (const auto& type : program_.types) {
      flag_reserved(type.name, "declaration");
      for (const auto& field : type.fields) flag_reserved(field.name, "field");
    }
    if (program_.has_parser) {
      flag_reserved(program_.parser.name, "parser");
      for (const auto& state : program_.parser.states) {
        flag_reserved(state.name, "state");
        if (state.name.rfind(kReservedStateName, 0) == 0) {
          report_.reserved_prefix_violations.push_back(state.name);
          error("RESERVED_IDENTIFIER",
                "state '" + state.name + "' uses a reserved fault tolerance state name");
        }
      }
    }
    for (const auto& control : program_.controls) {
      flag_reserved(control.name, "control");
      for (const auto& reg : control.registers) flag_reserved(reg.name, "register");
      for (const auto& table : control.tables) flag_reserved(table.name, "table");
      for (const auto& action : control.actions) {
        flag_reserved(action.name, "action");
        for (const auto& param : action.params) flag_reserved(param.name, "parameter");
      }
    }
  }

  const Program& program_;
  std::string prefix_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate_program(const Program& program, const std::string& reserved_prefix) {
  Validator validator(program, reserved_prefix);
  return validator.run();
}

}  // namespace araucaria::p4
