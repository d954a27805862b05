// SPDX-License-Identifier: Apache-2.0

#include "araucaria/intent/batch.hpp"

#include <chrono>

#include "araucaria/intent/parser.hpp"

namespace araucaria::intent {

BatchResult translate_batch(const std::string& source, const AnalyzeOptions& options) {
  BatchResult result;
  auto start = std::chrono::steady_clock::now();

  ParseResult parsed = parse_source(source);
  result.diagnostics = parsed.diagnostics;
  result.stats.attempted = parsed.intents.size();

  for (const IntentAst& ast : parsed.intents) {
    AnalyzeResult analyzed = analyze(ast, options);
    result.diagnostics.insert(result.diagnostics.end(), analyzed.diagnostics.begin(),
                              analyzed.diagnostics.end());
    if (analyzed.ok()) {
      result.plans.push_back({ast.name, std::move(*analyzed.plan)});
      ++result.stats.succeeded;
    }
  }

  auto end = std::chrono::steady_clock::now();
  result.stats.elapsed_seconds = std::chrono::duration<double>(end - start).count();
  return result;
}

}  // namespace araucaria::intent
