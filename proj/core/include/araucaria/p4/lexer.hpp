// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "araucaria/diagnostics.hpp"

namespace araucaria::p4 {

// Lexical token of the program subset. Keywords are identifiers here; the
// parser recognizes them by spelling. Integer lexemes keep their source
// spelling (hex stays hex) so emission can reproduce them.
struct Token {
  enum class Kind { kIdent, kInt, kPunct, kEnd };
  Kind kind = Kind::kEnd;
  std::string text;
  SourceLoc loc;
};

struct LexResult {
  std::vector<Token> tokens;  // always ends with kEnd
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

// Tokenizes subset source. Line comments (//) are discarded. Multi-char
// operators recognized: == != <= >= && ||. Angle brackets always lex as
// single characters so nested type arguments like register<bit<32>> work.
LexResult tokenize(std::string_view source);

}  // namespace araucaria::p4
