// SPDX-License-Identifier: Apache-2.0

#include "araucaria/intent/parser.hpp"

#include <string>

#include "araucaria/intent/lexer.hpp"

namespace araucaria::intent {
namespace {

// Recursive-descent parser over the intent grammar. Clauses inside the
// predicate braces may appear in any order; commas between clauses are
// optional so that label-style sources without a trailing comma still parse.
class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {}

  ParseResult parse_all(bool single) {
    while (!check(TokenKind::kEnd)) {
      const std::size_t before = pos_;
      auto intent = parse_one();
      if (intent) {
        result_.intents.push_back(std::move(*intent));
      } else {
        break;  // diagnostics already recorded
      }
      if (single) break;
      if (pos_ == before) break;  // no progress, avoid spinning
    }
    if (result_.ok() && single && !check(TokenKind::kEnd)) {
      error(peek().loc, "TRAILING_TOKENS",
            "unexpected " + std::string(token_kind_name(peek().kind)) + " after intent");
    }
    if (result_.ok() && result_.intents.empty() && !single) {
      // An empty document is not an intent; callers decide whether that matters.
    }
    return std::move(result_);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  bool check(TokenKind kind) const { return peek().kind == kind; }

  bool accept(TokenKind kind) {
    if (!check(kind)) return false;
    ++pos_;
    return true;
  }

  const Token* expect(TokenKind kind, const char* what) {
    if (check(kind)) return &tokens_[pos_++];
    error(peek().loc, "UNEXPECTED_TOKEN",
          std::string("expected ") + token_kind_name(kind) + " (" + what + "), found " +
              token_kind_name(peek().kind));
    return nullptr;
  }

  void error(SourceLoc loc, std::string code, std::string message) {
    result_.diagnostics.push_back(make_error(loc, std::move(code), std::move(message)));
  }

  std::optional<Operation> parse_op() {
    switch (peek().kind) {
      case TokenKind::kKwCreate: ++pos_; return Operation::kCreate;
      case TokenKind::kKwDelete: ++pos_; return Operation::kDelete;
      case TokenKind::kKwUpdate: ++pos_; return Operation::kUpdate;
      case TokenKind::kKwRead: ++pos_; return Operation::kRead;
      default:
        error(peek().loc, "UNKNOWN_OPERATION",
              "expected one of 'Create', 'Delete', 'Update', 'Read', found " +
                  std::string(token_kind_name(peek().kind)));
        return std::nullopt;
    }
  }

  std::optional<IntentAst> parse_one() {
    IntentAst intent;
    auto op = parse_op();
    if (!op) return std::nullopt;
    intent.operation = *op;

    accept(TokenKind::kKwIntent);  // "Create intent name" and "Create name" both parse
    const Token* name = expect(TokenKind::kIdent, "intent name");
    if (!name) return std::nullopt;
    intent.name = name->text;

    if (!expect(TokenKind::kLBrace, "start of predicate")) return std::nullopt;

    bool have_functionality = false;
    SourceLoc body_loc = peek().loc;
    while (!check(TokenKind::kRBrace) && !check(TokenKind::kEnd)) {
      const SourceLoc clause_loc = peek().loc;
      switch (peek().kind) {
        case TokenKind::kKwFunctionality: {
          auto func = parse_functionality();
          if (!func) return std::nullopt;
          if (have_functionality) {
            error(clause_loc, "DUPLICATE_FUNCTIONALITY", "intent already has a functionality");
            return std::nullopt;
          }
          intent.functionality = std::move(*func);
          have_functionality = true;
          break;
        }
        case TokenKind::kKwAvailability:
        case TokenKind::kKwTolerates: {
          auto req = parse_availability();
          if (!req) return std::nullopt;
          intent.requirements.push_back(Requirement{*req, clause_loc});
          break;
        }
        case TokenKind::kKwConsistency:
        case TokenKind::kKwStrong:
        case TokenKind::kKwEventual: {
          auto req = parse_consistency();
          if (!req) return std::nullopt;
          intent.requirements.push_back(Requirement{*req, clause_loc});
          break;
        }
        default:
          error(clause_loc, "UNEXPECTED_TOKEN",
                "expected a functionality or requirement clause, found " +
                    std::string(token_kind_name(peek().kind)));
          return std::nullopt;
      }
      accept(TokenKind::kComma);  // separators optional, trailing comma allowed
    }

    if (!expect(TokenKind::kRBrace, "end of predicate")) return std::nullopt;

    if (!have_functionality) {
      error(body_loc, "MISSING_FUNCTIONALITY", "intent has no functionality clause");
      return std::nullopt;
    }
    if (intent.requirements.empty()) {
      error(body_loc, "MISSING_REQUIREMENTS", "intent declares no requirements");
      return std::nullopt;
    }
    return intent;
  }

  std::optional<FunctionalitySpec> parse_functionality() {
    ++pos_;  // 'functionality'
    accept(TokenKind::kColon);
    FunctionalitySpec spec;
    const Token* name = expect(TokenKind::kIdent, "functionality name");
    if (!name) return std::nullopt;
    spec.fname = name->text;

    if (!expect(TokenKind::kLBracket, "functionality inputs")) return std::nullopt;
    bool first = true;
    while (!check(TokenKind::kRBracket)) {
      if (!first && !accept(TokenKind::kComma)) break;
      if (check(TokenKind::kRBracket)) break;  // trailing comma
      first = false;
      const SourceLoc input_loc = peek().loc;
      const Token* input_name = expect(TokenKind::kIdent, "input name");
      if (!input_name) return std::nullopt;
      if (!expect(TokenKind::kColon, "input value separator")) return std::nullopt;
      auto value = parse_value();
      if (!value) return std::nullopt;
      for (const auto& existing : spec.inputs) {
        if (existing.name == input_name->text) {
          error(input_loc, "DUPLICATE_INPUT",
                "input '" + input_name->text + "' appears more than once");
          return std::nullopt;
        }
      }
      spec.inputs.push_back(FunctionalityInput{input_name->text, std::move(*value)});
    }
    if (!expect(TokenKind::kRBracket, "end of inputs")) return std::nullopt;
    return spec;
  }

  std::optional<InputValue> parse_value() {
    InputValue v;
    if (check(TokenKind::kInt)) {
      v.kind = InputValue::Kind::kInt;
      v.int_value = peek().int_value;
      ++pos_;
      return v;
    }
    if (check(TokenKind::kIdent)) {
      v.kind = InputValue::Kind::kIdent;
      v.text = peek().text;
      ++pos_;
      return v;
    }
    if (check(TokenKind::kString)) {
      v.kind = InputValue::Kind::kString;
      v.text = peek().text;
      ++pos_;
      return v;
    }
    error(peek().loc, "UNEXPECTED_TOKEN",
          "expected an input value (integer, identifier, or string), found " +
              std::string(token_kind_name(peek().kind)));
    return std::nullopt;
  }

  std::optional<AvailabilityReq> parse_availability() {
    if (accept(TokenKind::kKwAvailability)) accept(TokenKind::kColon);
    if (!expect(TokenKind::kKwTolerates, "availability requirement")) return std::nullopt;
    const Token* count = expect(TokenKind::kInt, "tolerated failure count");
    if (!count) return std::nullopt;
    if (!expect(TokenKind::kKwFailures, "availability requirement")) return std::nullopt;
    return AvailabilityReq{count->int_value};
  }

  std::optional<ConsistencyReq> parse_consistency() {
    if (accept(TokenKind::kKwConsistency)) accept(TokenKind::kColon);
    ConsistencyReq req;
    if (accept(TokenKind::kKwStrong)) {
      req.level = ConsistencyLevel::kStrong;
    } else if (accept(TokenKind::kKwEventual)) {
      req.level = ConsistencyLevel::kEventual;
    } else {
      error(peek().loc, "UNEXPECTED_TOKEN",
            "expected 'strong' or 'eventual', found " +
                std::string(token_kind_name(peek().kind)));
      return std::nullopt;
    }
    if (accept(TokenKind::kLBracket)) {
      if (accept(TokenKind::kKwMergeMax)) {
        req.merge = MergeFn::kMaxHdrValue;
      } else if (accept(TokenKind::kKwAdd)) {
        req.merge = MergeFn::kAdd;
      } else {
        error(peek().loc, "UNKNOWN_MERGE",
              "expected 'max[hdr.value]' or 'add', found " +
                  std::string(token_kind_name(peek().kind)));
        return std::nullopt;
      }
      if (!expect(TokenKind::kRBracket, "end of merge function")) return std::nullopt;
    }
    return req;
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
  ParseResult result_;
};

}  // namespace

ParseResult parse_document(const std::vector<Token>& tokens) {
  if (tokens.empty()) return {};
  return Parser(tokens).parse_all(/*single=*/false);
}

ParseResult parse_intent(const std::vector<Token>& tokens) {
  if (tokens.empty()) {
    ParseResult r;
    r.diagnostics.push_back(make_error({1, 1}, "EMPTY_INPUT", "no tokens to parse"));
    return r;
  }
  return Parser(tokens).parse_all(/*single=*/true);
}

ParseResult parse_source(std::string_view source) {
  LexResult lexed = tokenize(source);
  if (!lexed.ok()) {
    ParseResult r;
    r.diagnostics = std::move(lexed.diagnostics);
    return r;
  }
  ParseResult parsed = parse_document(lexed.tokens);
  // Keep lexer warnings, if any.
  parsed.diagnostics.insert(parsed.diagnostics.begin(), lexed.diagnostics.begin(),
                            lexed.diagnostics.end());
  return parsed;
}

}  // namespace araucaria::intent
