// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "araucaria/p4/ast.hpp"

namespace araucaria::p4 {

// Canonical text form: declarations, then parser, then controls, separated
// by blank lines, four-space indents. Re-parsing the output yields a
// structurally equal program, and emission is byte-stable across runs.
std::string emit_program(const Program& program);

}  // namespace araucaria::p4
