// SPDX-License-Identifier: Apache-2.0

#include "araucaria/p4/ast.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace araucaria::p4 {

bool IfStmt::operator==(const IfStmt& other) const {
  return condition == other.condition && then_branch == other.then_branch &&
         else_branch == other.else_branch && has_else == other.has_else;
}

bool Statement::operator==(const Statement& other) const { return node == other.node; }

const ParserState* ParserDecl::find_state(const std::string& state_name) const {
  for (const auto& s : states) {
    if (s.name == state_name) return &s;
  }
  return nullptr;
}

namespace {

constexpr std::array<const char*, 4> kStandardProtocols = {"ethernet", "ipv4", "udp", "tcp"};

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void count_in(const std::vector<Statement>& stmts, PrimitiveCounts& counts) {
  for (const auto& stmt : stmts) {
    if (std::holds_alternative<CloneStmt>(stmt.node)) {
      ++counts.clones;
    } else if (std::holds_alternative<MulticastStmt>(stmt.node)) {
      ++counts.multicasts;
    } else if (std::holds_alternative<RecirculateStmt>(stmt.node)) {
      ++counts.recirculates;
    } else if (const auto* iff = std::get_if<IfStmt>(&stmt.node)) {
      count_in(iff->then_branch, counts);
      count_in(iff->else_branch, counts);
    }
  }
}

}  // namespace

StateRole classify_state(const std::string& state_name) {
  std::string lower = lowercase(state_name);
  if (lower == "start" || lower == "accept" || lower == "reject") return StateRole::kStructural;
  if (lower.rfind("parse_", 0) == 0) lower = lower.substr(6);
  for (const char* proto : kStandardProtocols) {
    if (lower == proto) return StateRole::kProtocol;
  }
  return StateRole::kInc;
}

bool is_inc_state(const std::string& state_name) {
  return classify_state(state_name) == StateRole::kInc;
}

std::string header_instance_base(const std::string& decl_name) {
  if (decl_name.size() > 2) {
    std::string suffix = decl_name.substr(decl_name.size() - 2);
    if (suffix == "_t" || suffix == "_h") return decl_name.substr(0, decl_name.size() - 2);
  }
  return decl_name;
}

std::string extract_base(const std::string& extract_arg) {
  std::string base = extract_arg;
  if (base.rfind("hdr.", 0) == 0) base = base.substr(4);
  auto dot = base.find('.');
  if (dot != std::string::npos) base = base.substr(0, dot);
  return base;
}

PrimitiveCounts count_primitives(const Program& program) {
  PrimitiveCounts counts;
  for (const auto& control : program.controls) {
    count_in(control.apply, counts);
    for (const auto& action : control.actions) count_in(action.body, counts);
  }
  return counts;
}

const char* decl_kind_name(DeclKind kind) {
  switch (kind) {
    case DeclKind::kHeader:
      return "header";
    case DeclKind::kStruct:
      return "struct";
    case DeclKind::kMetadata:
      return "metadata";
  }
  return "?";
}

}  // namespace araucaria::p4
