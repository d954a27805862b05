// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "araucaria/diagnostics.hpp"
#include "araucaria/p4/ast.hpp"

namespace araucaria::p4 {

struct ParseOptions {
  // Fragments (template files) may omit the parser; full programs need
  // exactly one.
  bool fragment = false;
  std::string source_name;
};

struct ParseResult {
  std::optional<Program> program;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return program.has_value(); }
};

ParseResult parse_program(std::string_view source, const ParseOptions& options = {});

// Joins expression tokens into the canonical spacing used throughout the
// AST: no space around '.', after '(' '[', before ')' ']' ',' ';' ':', or
// between a name and its call parenthesis. Exposed for the instrumenter,
// which manufactures expression strings.
std::string normalize_expr(std::string_view expr_source);

}  // namespace araucaria::p4
