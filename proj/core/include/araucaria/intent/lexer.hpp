// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>
#include <vector>

#include "araucaria/diagnostics.hpp"
#include "araucaria/intent/token.hpp"

namespace araucaria::intent {

struct LexResult {
  std::vector<Token> tokens;  // always ends with a kEnd token
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

// Tokenizes one intent document. Number words one..ten lex as integers.
// Unknown characters produce error diagnostics and are skipped, so the
// token stream is still usable for best-effort parsing.
LexResult tokenize(std::string_view source);

}  // namespace araucaria::intent
