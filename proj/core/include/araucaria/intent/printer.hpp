// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "araucaria/intent/ast.hpp"

namespace araucaria::intent {

// Canonical concrete syntax for an intent. Reparsing the output yields a
// structurally equal IntentAst.
std::string to_text(const IntentAst& intent);

}  // namespace araucaria::intent
