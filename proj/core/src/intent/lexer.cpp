// SPDX-License-Identifier: Apache-2.0

#include "araucaria/intent/lexer.hpp"

#include <array>
#include <cctype>
#include <string>
#include <unordered_map>

namespace araucaria::intent {
namespace {

const std::unordered_map<std::string_view, TokenKind>& keyword_table() {
  static const std::unordered_map<std::string_view, TokenKind> kTable = {
      {"Create", TokenKind::kKwCreate},
      {"Delete", TokenKind::kKwDelete},
      {"Update", TokenKind::kKwUpdate},
      {"Read", TokenKind::kKwRead},
      {"intent", TokenKind::kKwIntent},
      {"functionality", TokenKind::kKwFunctionality},
      {"availability", TokenKind::kKwAvailability},
      {"consistency", TokenKind::kKwConsistency},
      {"tolerates", TokenKind::kKwTolerates},
      {"failures", TokenKind::kKwFailures},
      {"strong", TokenKind::kKwStrong},
      {"eventual", TokenKind::kKwEventual},
      {"add", TokenKind::kKwAdd},
      {"max", TokenKind::kKwMergeMax},
  };
  return kTable;
}

// Number words accepted wherever an integer literal is.
const std::unordered_map<std::string_view, int>& number_words() {
  static const std::unordered_map<std::string_view, int> kWords = {
      {"one", 1}, {"two", 2}, {"three", 3}, {"four", 4},  {"five", 5},
      {"six", 6}, {"seven", 7}, {"eight", 8}, {"nine", 9}, {"ten", 10},
  };
  return kWords;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view source) : src_(source) {}

  LexResult run() {
    while (!at_end()) {
      skip_ws();
      if (at_end()) break;
      const SourceLoc loc{line_, col_};
      const char c = peek();
      if (is_ident_start(c)) {
        lex_word(loc);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        lex_int(loc);
      } else if (c == '"') {
        lex_string(loc);
      } else {
        lex_punct(loc);
      }
    }
    result_.tokens.push_back(Token{TokenKind::kEnd, "", 0, SourceLoc{line_, col_}});
    return std::move(result_);
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  void emit(TokenKind kind, std::string text, SourceLoc loc, std::int64_t value = 0) {
    result_.tokens.push_back(Token{kind, std::move(text), value, loc});
  }

  void lex_word(SourceLoc loc) {
    std::string word;
    while (!at_end() && is_ident_char(peek())) word.push_back(advance());

    if (auto it = number_words().find(word); it != number_words().end()) {
      emit(TokenKind::kInt, word, loc, it->second);
      return;
    }
    if (auto it = keyword_table().find(word); it != keyword_table().end()) {
      if (it->second == TokenKind::kKwMergeMax) {
        // Fuse the grammar's "max[hdr.value]" spelling into one token.
        static constexpr std::string_view kSuffix = "[hdr.value]";
        if (src_.substr(pos_, kSuffix.size()) == kSuffix) {
          for (std::size_t i = 0; i < kSuffix.size(); ++i) advance();
          emit(TokenKind::kKwMergeMax, word + std::string(kSuffix), loc);
          return;
        }
      }
      emit(it->second, std::move(word), loc);
      return;
    }
    emit(TokenKind::kIdent, std::move(word), loc);
  }

  void lex_int(SourceLoc loc) {
    std::string digits;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) digits.push_back(advance());
    std::int64_t value = 0;
    bool overflow = false;
    for (char c : digits) {
      value = value * 10 + (c - '0');
      if (value < 0 || digits.size() > 18) {
        overflow = true;
        break;
      }
    }
    if (overflow) {
      result_.diagnostics.push_back(make_error(loc, "INT_OVERFLOW", "integer literal too large"));
      value = 0;
    }
    emit(TokenKind::kInt, std::move(digits), loc, value);
  }

  void lex_string(SourceLoc loc) {
    advance();  // opening quote
    std::string body;
    while (!at_end() && peek() != '"' && peek() != '\n') body.push_back(advance());
    if (at_end() || peek() != '"') {
      result_.diagnostics.push_back(make_error(loc, "UNTERMINATED_STRING", "unterminated string literal"));
      emit(TokenKind::kString, body, loc);
      return;
    }
    advance();  // closing quote
    emit(TokenKind::kString, std::move(body), loc);
  }

  void lex_punct(SourceLoc loc) {
    const char c = advance();
    switch (c) {
      case '{': emit(TokenKind::kLBrace, "{", loc); return;
      case '}': emit(TokenKind::kRBrace, "}", loc); return;
      case '[': emit(TokenKind::kLBracket, "[", loc); return;
      case ']': emit(TokenKind::kRBracket, "]", loc); return;
      case ':': emit(TokenKind::kColon, ":", loc); return;
      case ',': emit(TokenKind::kComma, ",", loc); return;
      default:
        result_.diagnostics.push_back(make_error(
            loc, "UNKNOWN_CHAR", std::string("unknown character '") + describe(c) + "'"));
    }
  }

  static std::string describe(char c) {
    if (std::isprint(static_cast<unsigned char>(c))) return std::string(1, c);
    char buf[8];
    std::snprintf(buf, sizeof buf, "\\x%02x", static_cast<unsigned char>(c));
    return buf;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  LexResult result_;
};

}  // namespace

LexResult tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace araucaria::intent
