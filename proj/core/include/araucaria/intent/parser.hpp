// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "araucaria/diagnostics.hpp"
#include "araucaria/intent/ast.hpp"
#include "araucaria/intent/token.hpp"

namespace araucaria::intent {

struct ParseResult {
  std::vector<IntentAst> intents;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

// Parses a whole document (one or more intents) from a token stream.
ParseResult parse_document(const std::vector<Token>& tokens);

// Parses exactly one intent; trailing tokens are an error.
ParseResult parse_intent(const std::vector<Token>& tokens);

// Convenience: tokenize + parse. Never throws on malformed input.
ParseResult parse_source(std::string_view source);

}  // namespace araucaria::intent
