// SPDX-License-Identifier: Apache-2.0

#include "araucaria/p4/parser.hpp"

#include <set>
#include <utility>

#include "araucaria/p4/lexer.hpp"

namespace araucaria::p4 {

namespace {

bool no_space_before(const std::string& text) {
  return text == ")" || text == "]" || text == "," || text == ";" || text == ":" || text == ".";
}

bool no_space_after(const std::string& text) {
  return text == "(" || text == "[" || text == ".";
}

std::string smart_join(const std::vector<Token>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& tok = tokens[i];
    if (!out.empty()) {
      bool skip = no_space_before(tok.text) || no_space_after(tokens[i - 1].text);
      // call parenthesis hugs the callee name
      if (tok.text == "(" &&
          (tokens[i - 1].kind == Token::Kind::kIdent || tokens[i - 1].kind == Token::Kind::kInt)) {
        skip = true;
      }
      if (!skip) out += ' ';
    }
    out += tok.text;
  }
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const ParseOptions& options)
      : tokens_(std::move(tokens)), options_(options) {}

  ParseResult run() {
    ParseResult result;
    Program program;
    program.source_name = options_.source_name;

    while (!at_end() && !fatal_) {
      const Token& tok = peek();
      if (is_ident(tok, "header") || is_ident(tok, "struct") || is_ident(tok, "metadata")) {
        parse_type_decl(program);
      } else if (is_ident(tok, "parser")) {
        parse_parser_decl(program);
      } else if (is_ident(tok, "control")) {
        parse_control(program);
      } else {
        error(tok.loc, "UNEXPECTED_TOKEN",
              "expected a declaration (header, struct, metadata, parser, control), got '" +
                  tok.text + "'");
        fatal_ = true;
      }
    }

    if (!options_.fragment && !program.has_parser) {
      error({}, "NO_PARSER", "program declares no parser");
    }
    result.diagnostics = std::move(diagnostics_);
    if (!has_errors(result.diagnostics)) result.program = std::move(program);
    return result;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t idx = pos_ + ahead;
    if (idx >= tokens_.size()) idx = tokens_.size() - 1;
    return tokens_[idx];
  }
  const Token& advance() {
    const Token& tok = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return tok;
  }
  bool at_end() const { return peek().kind == Token::Kind::kEnd; }

  static bool is_ident(const Token& tok, std::string_view text) {
    return tok.kind == Token::Kind::kIdent && tok.text == text;
  }
  static bool is_punct(const Token& tok, std::string_view text) {
    return tok.kind == Token::Kind::kPunct && tok.text == text;
  }

  void error(SourceLoc loc, const std::string& code, const std::string& message) {
    diagnostics_.push_back(make_error(loc, code, message));
  }

  bool expect_punct(std::string_view text) {
    if (is_punct(peek(), text)) {
      advance();
      return true;
    }
    error(peek().loc, "UNEXPECTED_TOKEN",
          "expected '" + std::string(text) + "', got '" + peek().text + "'");
    fatal_ = true;
    return false;
  }

  std::optional<std::string> expect_name(const char* what) {
    if (peek().kind == Token::Kind::kIdent) return advance().text;
    error(peek().loc, "UNEXPECTED_TOKEN",
          std::string("expected ") + what + ", got '" + peek().text + "'");
    fatal_ = true;
    return std::nullopt;
  }

  std::optional<std::int64_t> expect_int(const char* what) {
    if (peek().kind == Token::Kind::kInt) {
      const std::string& text = advance().text;
      return std::stoll(text, nullptr, 0);
    }
    error(peek().loc, "UNEXPECTED_TOKEN",
          std::string("expected ") + what + ", got '" + peek().text + "'");
    fatal_ = true;
    return std::nullopt;
  }

  // bit<N>
  std::optional<int> parse_bit_type() {
    if (!is_ident(peek(), "bit")) {
      error(peek().loc, "UNEXPECTED_TOKEN", "expected 'bit', got '" + peek().text + "'");
      fatal_ = true;
      return std::nullopt;
    }
    advance();
    if (!expect_punct("<")) return std::nullopt;
    auto width = expect_int("bit width");
    if (!width) return std::nullopt;
    if (!expect_punct(">")) return std::nullopt;
    return static_cast<int>(*width);
  }

  // Reads expression tokens until one of the terminators appears at bracket
  // depth zero. The terminator is not consumed.
  std::string read_expr(const std::set<std::string>& terminators) {
    std::vector<Token> expr;
    int depth = 0;
    while (!at_end()) {
      const Token& tok = peek();
      if (depth == 0 && tok.kind == Token::Kind::kPunct && terminators.count(tok.text)) break;
      if (tok.kind == Token::Kind::kPunct) {
        if (tok.text == "(" || tok.text == "[") ++depth;
        if (tok.text == ")" || tok.text == "]") {
          if (depth == 0) break;  // unbalanced close belongs to caller
          --depth;
        }
        if (tok.text == "{" || tok.text == "}") break;  // never part of an expression
      }
      expr.push_back(advance());
    }
    if (expr.empty()) {
      error(peek().loc, "EMPTY_EXPRESSION", "expected an expression before '" + peek().text + "'");
      fatal_ = true;
    }
    return smart_join(expr);
  }

  // ident(.ident)*
  std::optional<std::string> parse_dotted_name(const char* what) {
    auto first = expect_name(what);
    if (!first) return std::nullopt;
    std::string name = *first;
    while (is_punct(peek(), ".")) {
      advance();
      auto part = expect_name("name after '.'");
      if (!part) return std::nullopt;
      name += "." + *part;
    }
    return name;
  }

  void parse_type_decl(Program& program) {
    const Token& kw = advance();
    DeclKind kind = DeclKind::kHeader;
    if (kw.text == "struct") kind = DeclKind::kStruct;
    if (kw.text == "metadata") kind = DeclKind::kMetadata;

    auto name = expect_name("declaration name");
    if (!name) return;
    for (const auto& existing : program.types) {
      if (existing.name == *name) {
        error(kw.loc, "DUPLICATE_IDENTIFIER", "duplicate declaration '" + *name + "'");
        break;
      }
    }
    TypeDecl decl;
    decl.kind = kind;
    decl.name = *name;
    if (!expect_punct("{")) return;
    while (!at_end() && !is_punct(peek(), "}")) {
      auto width = parse_bit_type();
      if (!width) return;
      auto field_name = expect_name("field name");
      if (!field_name) return;
      if (!expect_punct(";")) return;
      for (const auto& f : decl.fields) {
        if (f.name == *field_name) {
          error(kw.loc, "DUPLICATE_IDENTIFIER",
                "duplicate field '" + *field_name + "' in '" + decl.name + "'");
        }
      }
      decl.fields.push_back({*field_name, *width});
    }
    if (!expect_punct("}")) return;
    program.types.push_back(std::move(decl));
  }

  void parse_parser_decl(Program& program) {
    const Token& kw = advance();
    if (program.has_parser) {
      error(kw.loc, "DUPLICATE_PARSER", "program may declare only one parser");
      fatal_ = true;
      return;
    }
    auto name = expect_name("parser name");
    if (!name) return;
    program.parser.name = *name;
    program.has_parser = true;
    if (!expect_punct("{")) return;
    while (!at_end() && !is_punct(peek(), "}")) {
      if (!is_ident(peek(), "state")) {
        error(peek().loc, "UNEXPECTED_TOKEN", "expected 'state', got '" + peek().text + "'");
        fatal_ = true;
        return;
      }
      parse_state(program.parser);
      if (fatal_) return;
    }
    expect_punct("}");
  }

  void parse_state(ParserDecl& parser) {
    const Token& kw = advance();  // state
    auto name = expect_name("state name");
    if (!name) return;
    if (parser.find_state(*name) != nullptr) {
      error(kw.loc, "DUPLICATE_STATE", "duplicate state '" + *name + "'");
    }
    ParserState state;
    state.name = *name;
    if (!expect_punct("{")) return;

    bool saw_transition = false;
    while (!at_end() && !is_punct(peek(), "}")) {
      if (is_ident(peek(), "extract")) {
        if (saw_transition) {
          error(peek().loc, "UNEXPECTED_TOKEN", "extract after transition in '" + state.name + "'");
          fatal_ = true;
          return;
        }
        advance();
        if (!expect_punct("(")) return;
        auto arg = parse_dotted_name("extract argument");
        if (!arg) return;
        if (!expect_punct(")")) return;
        if (!expect_punct(";")) return;
        state.extracts.push_back(*arg);
      } else if (is_ident(peek(), "transition")) {
        if (saw_transition) {
          error(peek().loc, "DUPLICATE_TRANSITION",
                "state '" + state.name + "' has more than one transition");
          fatal_ = true;
          return;
        }
        saw_transition = true;
        advance();
        if (is_ident(peek(), "select")) {
          advance();
          if (!expect_punct("(")) return;
          state.select_expr = read_expr({")"});
          if (fatal_) return;
          if (!expect_punct(")")) return;
          if (!expect_punct("{")) return;
          while (!at_end() && !is_punct(peek(), "}")) {
            Transition arm;
            if (is_ident(peek(), "default")) {
              advance();
              arm.is_default = true;
            } else {
              arm.key = read_expr({":"});
              if (fatal_) return;
            }
            if (!expect_punct(":")) return;
            auto target = expect_name("transition target");
            if (!target) return;
            arm.target = *target;
            if (!expect_punct(";")) return;
            state.transitions.push_back(std::move(arm));
          }
          if (!expect_punct("}")) return;
        } else {
          auto target = expect_name("transition target");
          if (!target) return;
          Transition arm;
          arm.target = *target;
          state.transitions.push_back(std::move(arm));
          if (!expect_punct(";")) return;
        }
      } else {
        error(peek().loc, "UNEXPECTED_TOKEN",
              "expected 'extract' or 'transition', got '" + peek().text + "'");
        fatal_ = true;
        return;
      }
    }
    if (!expect_punct("}")) return;
    if (!saw_transition) {
      error(kw.loc, "MISSING_TRANSITION", "state '" + state.name + "' has no transition");
    }
    parser.states.push_back(std::move(state));
  }

  void parse_control(Program& program) {
    advance();  // control
    auto name = expect_name("control name");
    if (!name) return;
    for (const auto& existing : program.controls) {
      if (existing.name == *name) {
        error(peek().loc, "DUPLICATE_IDENTIFIER", "duplicate control '" + *name + "'");
      }
    }
    ControlBlock control;
    control.name = *name;
    if (!expect_punct("{")) return;
    bool saw_apply = false;
    while (!at_end() && !is_punct(peek(), "}")) {
      const Token& tok = peek();
      if (is_ident(tok, "register")) {
        parse_register(control);
      } else if (is_ident(tok, "action")) {
        parse_action(control);
      } else if (is_ident(tok, "table")) {
        parse_table(control);
      } else if (is_ident(tok, "apply")) {
        if (saw_apply) {
          error(tok.loc, "DUPLICATE_APPLY", "control '" + control.name + "' has two apply blocks");
          fatal_ = true;
          return;
        }
        saw_apply = true;
        advance();
        if (!expect_punct("{")) return;
        control.apply = parse_statements();
        if (fatal_) return;
        if (!expect_punct("}")) return;
      } else {
        error(tok.loc, "UNEXPECTED_TOKEN",
              "expected register, action, table or apply, got '" + tok.text + "'");
        fatal_ = true;
        return;
      }
      if (fatal_) return;
    }
    if (!expect_punct("}")) return;
    program.controls.push_back(std::move(control));
  }

  void parse_register(ControlBlock& control) {
    advance();  // register
    if (!expect_punct("<")) return;
    auto width = parse_bit_type();
    if (!width) return;
    if (!expect_punct(">")) return;
    if (!expect_punct("(")) return;
    auto size = expect_int("register size");
    if (!size) return;
    if (!expect_punct(")")) return;
    auto name = expect_name("register name");
    if (!name) return;
    if (!expect_punct(";")) return;
    for (const auto& r : control.registers) {
      if (r.name == *name)
        error(peek().loc, "DUPLICATE_IDENTIFIER", "duplicate register '" + *name + "'");
    }
    control.registers.push_back({*name, *width, *size});
  }

  void parse_action(ControlBlock& control) {
    advance();  // action
    auto name = expect_name("action name");
    if (!name) return;
    for (const auto& a : control.actions) {
      if (a.name == *name)
        error(peek().loc, "DUPLICATE_IDENTIFIER", "duplicate action '" + *name + "'");
    }
    ActionDecl action;
    action.name = *name;
    if (!expect_punct("(")) return;
    while (!at_end() && !is_punct(peek(), ")")) {
      auto width = parse_bit_type();
      if (!width) return;
      auto pname = expect_name("parameter name");
      if (!pname) return;
      action.params.push_back({*width, *pname});
      if (is_punct(peek(), ",")) {
        advance();
        continue;
      }
      break;
    }
    if (!expect_punct(")")) return;
    if (!expect_punct("{")) return;
    action.body = parse_statements();
    if (fatal_) return;
    if (!expect_punct("}")) return;
    control.actions.push_back(std::move(action));
  }

  void parse_table(ControlBlock& control) {
    advance();  // table
    auto name = expect_name("table name");
    if (!name) return;
    for (const auto& t : control.tables) {
      if (t.name == *name)
        error(peek().loc, "DUPLICATE_IDENTIFIER", "duplicate table '" + *name + "'");
    }
    TableDecl table;
    table.name = *name;
    if (!expect_punct("{")) return;
    while (!at_end() && !is_punct(peek(), "}")) {
      if (is_ident(peek(), "key")) {
        advance();
        if (!expect_punct("=")) return;
        if (!expect_punct("{")) return;
        while (!at_end() && !is_punct(peek(), "}")) {
          auto field = parse_dotted_name("key field");
          if (!field) return;
          if (!expect_punct(":")) return;
          auto kind = expect_name("match kind");
          if (!kind) return;
          if (!expect_punct(";")) return;
          table.keys.push_back({*field, *kind});
        }
        if (!expect_punct("}")) return;
      } else if (is_ident(peek(), "actions")) {
        advance();
        if (!expect_punct("=")) return;
        if (!expect_punct("{")) return;
        while (!at_end() && !is_punct(peek(), "}")) {
          auto aname = expect_name("action name");
          if (!aname) return;
          if (!expect_punct(";")) return;
          table.actions.push_back(*aname);
        }
        if (!expect_punct("}")) return;
      } else if (is_ident(peek(), "default_action")) {
        advance();
        if (!expect_punct("=")) return;
        auto aname = expect_name("action name");
        if (!aname) return;
        table.default_action = *aname;
        if (!expect_punct(";")) return;
      } else {
        error(peek().loc, "UNEXPECTED_TOKEN",
              "expected key, actions or default_action, got '" + peek().text + "'");
        fatal_ = true;
        return;
      }
    }
    if (!expect_punct("}")) return;
    control.tables.push_back(std::move(table));
  }

  std::vector<Statement> parse_statements() {
    std::vector<Statement> stmts;
    while (!at_end() && !is_punct(peek(), "}") && !fatal_) {
      auto stmt = parse_statement();
      if (!stmt) break;
      stmts.push_back(std::move(*stmt));
    }
    return stmts;
  }

  std::optional<Statement> parse_statement() {
    const Token& tok = peek();
    if (is_ident(tok, "if")) {
      advance();
      if (!expect_punct("(")) return std::nullopt;
      IfStmt iff;
      iff.condition = read_expr({")"});
      if (fatal_) return std::nullopt;
      if (!expect_punct(")")) return std::nullopt;
      if (!expect_punct("{")) return std::nullopt;
      iff.then_branch = parse_statements();
      if (fatal_) return std::nullopt;
      if (!expect_punct("}")) return std::nullopt;
      if (is_ident(peek(), "else")) {
        advance();
        iff.has_else = true;
        if (!expect_punct("{")) return std::nullopt;
        iff.else_branch = parse_statements();
        if (fatal_) return std::nullopt;
        if (!expect_punct("}")) return std::nullopt;
      }
      return Statement{std::move(iff)};
    }

    if (is_ident(tok, "multicast") && is_punct(peek(1), "(")) {
      advance();
      advance();
      MulticastStmt stmt{read_expr({")"})};
      if (fatal_) return std::nullopt;
      if (!expect_punct(")")) return std::nullopt;
      if (!expect_punct(";")) return std::nullopt;
      return Statement{std::move(stmt)};
    }
    if (is_ident(tok, "clone") && is_punct(peek(1), "(")) {
      advance();
      advance();
      CloneStmt stmt{read_expr({")"})};
      if (fatal_) return std::nullopt;
      if (!expect_punct(")")) return std::nullopt;
      if (!expect_punct(";")) return std::nullopt;
      return Statement{std::move(stmt)};
    }
    if (is_ident(tok, "recirculate") && is_punct(peek(1), "(")) {
      advance();
      advance();
      if (!expect_punct(")")) return std::nullopt;
      if (!expect_punct(";")) return std::nullopt;
      return Statement{RecirculateStmt{}};
    }

    if (tok.kind != Token::Kind::kIdent) {
      error(tok.loc, "UNEXPECTED_TOKEN", "expected a statement, got '" + tok.text + "'");
      fatal_ = true;
      return std::nullopt;
    }

    // Register ops and table apply look like name.method(...); scan ahead.
    if (is_punct(peek(1), ".") && peek(2).kind == Token::Kind::kIdent && is_punct(peek(3), "(")) {
      const std::string& method = peek(2).text;
      if (method == "read" || method == "write" || method == "apply") {
        std::string owner = advance().text;
        advance();  // .
        advance();  // method
        advance();  // (
        if (method == "apply") {
          if (!expect_punct(")")) return std::nullopt;
          if (!expect_punct(";")) return std::nullopt;
          return Statement{TableApplyStmt{owner}};
        }
        std::string first = read_expr({","});
        if (fatal_) return std::nullopt;
        if (!expect_punct(",")) return std::nullopt;
        std::string second = read_expr({")"});
        if (fatal_) return std::nullopt;
        if (!expect_punct(")")) return std::nullopt;
        if (!expect_punct(";")) return std::nullopt;
        if (method == "read") return Statement{RegisterReadStmt{owner, first, second}};
        return Statement{RegisterWriteStmt{owner, first, second}};
      }
    }

    // Plain call: name(args);
    if (is_punct(peek(1), "(")) {
      ActionCallStmt call;
      call.action = advance().text;
      advance();  // (
      if (!is_punct(peek(), ")")) {
        while (true) {
          call.args.push_back(read_expr({",", ")"}));
          if (fatal_) return std::nullopt;
          if (is_punct(peek(), ",")) {
            advance();
            continue;
          }
          break;
        }
      }
      if (!expect_punct(")")) return std::nullopt;
      if (!expect_punct(";")) return std::nullopt;
      return Statement{std::move(call)};
    }

    // Assignment: dotted-lhs = expr;
    auto lhs = parse_dotted_name("assignment target");
    if (!lhs) return std::nullopt;
    if (!expect_punct("=")) return std::nullopt;
    AssignStmt assign;
    assign.lhs = *lhs;
    assign.rhs = read_expr({";"});
    if (fatal_) return std::nullopt;
    if (!expect_punct(";")) return std::nullopt;
    return Statement{std::move(assign)};
  }

  std::vector<Token> tokens_;
  ParseOptions options_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic> diagnostics_;
  bool fatal_ = false;
};

}  // namespace

ParseResult parse_program(std::string_view source, const ParseOptions& options) {
  LexResult lexed = tokenize(source);
  if (!lexed.ok()) {
    ParseResult result;
    result.diagnostics = std::move(lexed.diagnostics);
    return result;
  }
  Parser parser(std::move(lexed.tokens), options);
  return parser.run();
}

std::string normalize_expr(std::string_view expr_source) {
  LexResult lexed = tokenize(expr_source);
  std::vector<Token> tokens = std::move(lexed.tokens);
  if (!tokens.empty()) tokens.pop_back();  // drop end marker
  return smart_join(tokens);
}

}  // namespace araucaria::p4
