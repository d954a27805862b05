// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "araucaria/diagnostics.hpp"
#include "araucaria/p4/ast.hpp"

namespace araucaria::p4 {

inline constexpr const char* kReservedPrefix = "araucaria_";
inline constexpr const char* kReservedStateName = "parse_araucaria";

struct ValidationReport {
  std::vector<Diagnostic> diagnostics;
  std::vector<std::string> reserved_prefix_violations;

  bool ok() const { return !has_errors(diagnostics); }
};

// Structural validation: parser graph acyclicity, dangling state, header,
// register, table and action references, select-arm uniqueness, and the
// reserved-name contract. Pass an empty reserved_prefix to skip the
// reserved-name checks (used when re-validating instrumented output, which
// legitimately declares reserved names).
ValidationReport validate_program(const Program& program,
                                  const std::string& reserved_prefix = kReservedPrefix);

}  // namespace araucaria::p4
