// SPDX-License-Identifier: Apache-2.0

#include "araucaria/p4/emit.hpp"

#include <sstream>

namespace araucaria::p4 {

namespace {

std::string indent(int depth) { return std::string(static_cast<std::size_t>(depth) * 4, ' '); }

void emit_statements(std::ostringstream& out, const std::vector<Statement>& stmts, int depth);

void emit_statement(std::ostringstream& out, const Statement& stmt, int depth) {
  const std::string pad = indent(depth);
  if (const auto* assign = std::get_if<AssignStmt>(&stmt.node)) {
    out << pad << assign->lhs << " = " << assign->rhs << ";\n";
  } else if (const auto* read = std::get_if<RegisterReadStmt>(&stmt.node)) {
    out << pad << read->reg << ".read(" << read->dst << ", " << read->index << ");\n";
  } else if (const auto* write = std::get_if<RegisterWriteStmt>(&stmt.node)) {
    out << pad << write->reg << ".write(" << write->index << ", " << write->value << ");\n";
  } else if (const auto* table = std::get_if<TableApplyStmt>(&stmt.node)) {
    out << pad << table->table << ".apply();\n";
  } else if (const auto* call = std::get_if<ActionCallStmt>(&stmt.node)) {
    out << pad << call->action << "(";
    for (std::size_t i = 0; i < call->args.size(); ++i) {
      if (i) out << ", ";
      out << call->args[i];
    }
    out << ");\n";
  } else if (const auto* mc = std::get_if<MulticastStmt>(&stmt.node)) {
    out << pad << "multicast(" << mc->group << ");\n";
  } else if (const auto* cl = std::get_if<CloneStmt>(&stmt.node)) {
    out << pad << "clone(" << cl->session << ");\n";
  } else if (std::holds_alternative<RecirculateStmt>(stmt.node)) {
    out << pad << "recirculate();\n";
  } else if (const auto* iff = std::get_if<IfStmt>(&stmt.node)) {
    out << pad << "if (" << iff->condition << ") {\n";
    emit_statements(out, iff->then_branch, depth + 1);
    out << pad << "}";
    if (iff->has_else) {
      out << " else {\n";
      emit_statements(out, iff->else_branch, depth + 1);
      out << pad << "}";
    }
    out << "\n";
  }
}

void emit_statements(std::ostringstream& out, const std::vector<Statement>& stmts, int depth) {
  for (const auto& stmt : stmts) emit_statement(out, stmt, depth);
}

void emit_type(std::ostringstream& out, const TypeDecl& decl) {
  out << decl_kind_name(decl.kind) << " " << decl.name << " {\n";
  for (const auto& field : decl.fields) {
    out << indent(1) << "bit<" << field.width << "> " << field.name << ";\n";
  }
  out << "}\n";
}

void emit_parser(std::ostringstream& out, const ParserDecl& parser) {
  out << "parser " << parser.name << " {\n";
  for (const auto& state : parser.states) {
    out << indent(1) << "state " << state.name << " {\n";
    for (const auto& extract : state.extracts) {
      out << indent(2) << "extract(" << extract << ");\n";
    }
    if (state.select_expr.empty()) {
      if (!state.transitions.empty()) {
        out << indent(2) << "transition " << state.transitions.front().target << ";\n";
      }
    } else {
      out << indent(2) << "transition select(" << state.select_expr << ") {\n";
      for (const auto& arm : state.transitions) {
        out << indent(3);
        if (arm.is_default) {
          out << "default";
        } else {
          out << arm.key;
        }
        out << ": " << arm.target << ";\n";
      }
      out << indent(2) << "}\n";
    }
    out << indent(1) << "}\n";
  }
  out << "}\n";
}

void emit_control(std::ostringstream& out, const ControlBlock& control) {
  out << "control " << control.name << " {\n";
  for (const auto& reg : control.registers) {
    out << indent(1) << "register<bit<" << reg.width << ">>(" << reg.size << ") " << reg.name
        << ";\n";
  }
  for (const auto& action : control.actions) {
    out << indent(1) << "action " << action.name << "(";
    for (std::size_t i = 0; i < action.params.size(); ++i) {
      if (i) out << ", ";
      out << "bit<" << action.params[i].width << "> " << action.params[i].name;
    }
    out << ") {\n";
    emit_statements(out, action.body, 2);
    out << indent(1) << "}\n";
  }
  for (const auto& table : control.tables) {
    out << indent(1) << "table " << table.name << " {\n";
    if (!table.keys.empty()) {
      out << indent(2) << "key = {\n";
      for (const auto& key : table.keys) {
        out << indent(3) << key.field << ": " << key.match_kind << ";\n";
      }
      out << indent(2) << "}\n";
    }
    out << indent(2) << "actions = {\n";
    for (const auto& action : table.actions) {
      out << indent(3) << action << ";\n";
    }
    out << indent(2) << "}\n";
    if (!table.default_action.empty()) {
      out << indent(2) << "default_action = " << table.default_action << ";\n";
    }
    out << indent(1) << "}\n";
  }
  out << indent(1) << "apply {\n";
  emit_statements(out, control.apply, 2);
  out << indent(1) << "}\n";
  out << "}\n";
}

}  // namespace

std::string emit_program(const Program& program) {
  std::ostringstream out;
  bool first = true;
  auto separate = [&] {
    if (!first) out << "\n";
    first = false;
  };
  for (const auto& type : program.types) {
    separate();
    emit_type(out, type);
  }
  if (program.has_parser) {
    separate();
    emit_parser(out, program.parser);
  }
  for (const auto& control : program.controls) {
    separate();
    emit_control(out, control);
  }
  return out.str();
}

}  // namespace araucaria::p4
