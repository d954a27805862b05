// SPDX-License-Identifier: Apache-2.0

#include "araucaria/p4/lexer.hpp"

#include <cctype>

namespace araucaria::p4 {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_hex_digit(char c) { return std::isxdigit(static_cast<unsigned char>(c)); }

}  // namespace

LexResult tokenize(std::string_view source) {
  LexResult result;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  auto advance = [&](std::size_t n) {
    for (std::size_t i = 0; i < n && pos < source.size(); ++i, ++pos) {
      if (source[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (pos < source.size()) {
    char c = source[pos];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && pos + 1 < source.size() && source[pos + 1] == '/') {
      while (pos < source.size() && source[pos] != '\n') advance(1);
      continue;
    }

    SourceLoc loc{line, col};
    if (is_ident_start(c)) {
      std::size_t start = pos;
      while (pos < source.size() && is_ident_char(source[pos])) advance(1);
      result.tokens.push_back(
          {Token::Kind::kIdent, std::string(source.substr(start, pos - start)), loc});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      if (c == '0' && pos + 1 < source.size() &&
          (source[pos + 1] == 'x' || source[pos + 1] == 'X')) {
        advance(2);
        while (pos < source.size() && is_hex_digit(source[pos])) advance(1);
      } else {
        while (pos < source.size() && std::isdigit(static_cast<unsigned char>(source[pos])))
          advance(1);
      }
      result.tokens.push_back(
          {Token::Kind::kInt, std::string(source.substr(start, pos - start)), loc});
      continue;
    }

    // two-char operators first
    if (pos + 1 < source.size()) {
      std::string two = std::string(source.substr(pos, 2));
      if (two == "==" || two == "!=" || two == "<=" || two == ">=" || two == "&&" || two == "||") {
        result.tokens.push_back({Token::Kind::kPunct, two, loc});
        advance(2);
        continue;
      }
    }
    static const std::string kSingles = "{}()[]<>;:,.=+-*/!&|";
    if (kSingles.find(c) != std::string::npos) {
      result.tokens.push_back({Token::Kind::kPunct, std::string(1, c), loc});
      advance(1);
      continue;
    }

    std::string shown = std::isprint(static_cast<unsigned char>(c))
                            ? "'" + std::string(1, c) + "'"
                            : "byte " + std::to_string(static_cast<unsigned char>(c));
    result.diagnostics.push_back(
        make_error(loc, "UNKNOWN_CHAR", "unexpected character " + shown));
    advance(1);
  }

  result.tokens.push_back({Token::Kind::kEnd, "", {line, col}});
  return result;
}

}  // namespace araucaria::p4
