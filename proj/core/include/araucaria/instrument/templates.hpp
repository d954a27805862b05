// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "araucaria/diagnostics.hpp"
#include "araucaria/p4/ast.hpp"

namespace araucaria::instrument {

// The three weavable fragments. initialization carries the protocol type
// declarations plus the template parser state; preparation and completion
// carry the control-side registers, actions and statements placed around
// the computation.
struct TemplateSet {
  std::vector<p4::TypeDecl> declarations;
  p4::ParserState araucaria_state;  // named parse_araucaria, extracts the protocol header
  p4::ControlBlock preparation;
  p4::ControlBlock completion;
};

struct TemplateLoadResult {
  std::optional<TemplateSet> templates;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return templates.has_value(); }
};

// Parses and shape-checks the three fragment texts. Checks: every declared
// identifier carries the reserved prefix (the parse_araucaria state name is
// the sanctioned exception), initialization declares the protocol header
// and exactly one parser state, preparation's apply ends with the empty
// guard conditional, and the fragments stay within the subset grammar.
TemplateLoadResult load_templates_from_text(const std::string& initialization,
                                            const std::string& preparation,
                                            const std::string& completion);

// Loads {initialization,preparation,completion}.p4s from a directory.
TemplateLoadResult load_templates(const std::string& directory);

// The copy compiled into the library from the shipped template files.
TemplateLoadResult builtin_templates();

}  // namespace araucaria::instrument
