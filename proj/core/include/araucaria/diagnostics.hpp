// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace araucaria {

struct SourceLoc {
  int line = 0;  // 1-based; 0 means "no location"
  int col = 0;

  bool operator==(const SourceLoc&) const = default;
};

enum class Severity { kError, kWarning };

struct Diagnostic {
  Severity severity = Severity::kError;
  SourceLoc loc;
  std::string code;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

inline Diagnostic make_error(SourceLoc loc, std::string code, std::string message) {
  return Diagnostic{Severity::kError, loc, std::move(code), std::move(message)};
}

inline Diagnostic make_warning(SourceLoc loc, std::string code, std::string message) {
  return Diagnostic{Severity::kWarning, loc, std::move(code), std::move(message)};
}

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) {
    if (d.severity == Severity::kError) return true;
  }
  return false;
}

// Renders "file:line:col: severity CODE: message".
std::string format_diagnostic(const std::string& file, const Diagnostic& d);

std::string format_diagnostics(const std::string& file, const std::vector<Diagnostic>& diags);

}  // namespace araucaria
