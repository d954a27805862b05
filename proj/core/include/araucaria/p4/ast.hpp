// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace araucaria::p4 {

// Field of a header, struct or metadata declaration: bit<width> name;
struct Field {
  std::string name;
  int width = 0;

  bool operator==(const Field&) const = default;
};

enum class DeclKind { kHeader, kStruct, kMetadata };

struct TypeDecl {
  DeclKind kind = DeclKind::kHeader;
  std::string name;
  std::vector<Field> fields;

  bool operator==(const TypeDecl&) const = default;
};

// One arm of a parser transition. A plain `transition X;` is a single arm
// with empty key on a state whose select_expr is empty. synthetic_parent is
// set only on arms manufactured during instrumentation; it records which
// state originally owned the arm and never appears in emitted text.
struct Transition {
  bool is_default = false;
  std::string key;
  std::string target;
  std::string synthetic_parent;

  bool operator==(const Transition&) const = default;
};

struct ParserState {
  std::string name;
  std::vector<std::string> extracts;  // arguments of extract(...), in order
  std::string select_expr;            // empty means plain transition
  std::vector<Transition> transitions;

  bool operator==(const ParserState&) const = default;
};

struct ParserDecl {
  std::string name;
  std::vector<ParserState> states;

  const ParserState* find_state(const std::string& state_name) const;
  bool operator==(const ParserDecl&) const = default;
};

struct RegisterDecl {
  std::string name;
  int width = 0;
  std::int64_t size = 0;

  bool operator==(const RegisterDecl&) const = default;
};

struct ActionParam {
  int width = 0;
  std::string name;

  bool operator==(const ActionParam&) const = default;
};

struct Statement;

struct AssignStmt {
  std::string lhs;
  std::string rhs;

  bool operator==(const AssignStmt&) const = default;
};

struct RegisterReadStmt {
  std::string reg;
  std::string dst;
  std::string index;

  bool operator==(const RegisterReadStmt&) const = default;
};

struct RegisterWriteStmt {
  std::string reg;
  std::string index;
  std::string value;

  bool operator==(const RegisterWriteStmt&) const = default;
};

struct TableApplyStmt {
  std::string table;

  bool operator==(const TableApplyStmt&) const = default;
};

struct ActionCallStmt {
  std::string action;
  std::vector<std::string> args;

  bool operator==(const ActionCallStmt&) const = default;
};

struct MulticastStmt {
  std::string group;

  bool operator==(const MulticastStmt&) const = default;
};

struct CloneStmt {
  std::string session;

  bool operator==(const CloneStmt&) const = default;
};

struct RecirculateStmt {
  bool operator==(const RecirculateStmt&) const = default;
};

struct IfStmt {
  std::string condition;
  std::vector<Statement> then_branch;
  std::vector<Statement> else_branch;
  bool has_else = false;

  bool operator==(const IfStmt&) const;
};

struct Statement {
  std::variant<AssignStmt, RegisterReadStmt, RegisterWriteStmt, TableApplyStmt, ActionCallStmt,
               MulticastStmt, CloneStmt, RecirculateStmt, IfStmt>
      node;

  bool operator==(const Statement&) const;
};

struct ActionDecl {
  std::string name;
  std::vector<ActionParam> params;
  std::vector<Statement> body;

  bool operator==(const ActionDecl&) const = default;
};

struct TableKey {
  std::string field;
  std::string match_kind;  // subset supports exact only

  bool operator==(const TableKey&) const = default;
};

struct TableDecl {
  std::string name;
  std::vector<TableKey> keys;
  std::vector<std::string> actions;
  std::string default_action;  // empty when absent

  bool operator==(const TableDecl&) const = default;
};

struct ControlBlock {
  std::string name;
  std::vector<RegisterDecl> registers;
  std::vector<ActionDecl> actions;
  std::vector<TableDecl> tables;
  std::vector<Statement> apply;

  bool operator==(const ControlBlock&) const = default;
};

struct Program {
  std::vector<TypeDecl> types;
  ParserDecl parser;       // name empty when a fragment has no parser
  bool has_parser = false;
  std::vector<ControlBlock> controls;
  std::string source_name;

  bool operator==(const Program& other) const {
    // source_name is provenance, not content
    return types == other.types && parser == other.parser && has_parser == other.has_parser &&
           controls == other.controls;
  }
};

// Role of a parser state in the pipeline. start/accept/reject are
// structural; states extracting a standard protocol (ethernet, ipv4, udp,
// tcp, with or without a parse_ prefix) are protocol states; everything
// else implements the in-network computation.
enum class StateRole { kStructural, kProtocol, kInc };

StateRole classify_state(const std::string& state_name);
bool is_inc_state(const std::string& state_name);

// Maps a declared header type name to the instance base used in extract()
// arguments: a trailing _t or _h suffix is dropped (ethernet_t -> ethernet).
std::string header_instance_base(const std::string& decl_name);

// Base component of an extract argument: hdr.ethernet -> ethernet.
std::string extract_base(const std::string& extract_arg);

struct PrimitiveCounts {
  int clones = 0;
  int multicasts = 0;
  int recirculates = 0;
};

// Counts packet-replication primitives across every apply block and action
// body in the program.
PrimitiveCounts count_primitives(const Program& program);

const char* decl_kind_name(DeclKind kind);

}  // namespace araucaria::p4
