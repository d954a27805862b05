// SPDX-License-Identifier: Apache-2.0

#include "araucaria/diagnostics.hpp"

#include <sstream>

namespace araucaria {

std::string format_diagnostic(const std::string& file, const Diagnostic& d) {
  std::ostringstream out;
  out << file << ':' << d.loc.line << ':' << d.loc.col << ": "
      << (d.severity == Severity::kError ? "error" : "warning") << ' ' << d.code << ": "
      << d.message;
  return out.str();
}

std::string format_diagnostics(const std::string& file, const std::vector<Diagnostic>& diags) {
  std::ostringstream out;
  for (const auto& d : diags) {
    out << format_diagnostic(file, d) << '\n';
  }
  return out.str();
}

}  // namespace araucaria
