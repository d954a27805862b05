// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "araucaria/diagnostics.hpp"
#include "araucaria/intent/analyzer.hpp"

namespace araucaria::intent {

struct TranslatedIntent {
  std::string name;
  RefinementPlan plan;
};

struct BatchStats {
  std::size_t attempted = 0;
  std::size_t succeeded = 0;
  double elapsed_seconds = 0.0;
};

struct BatchResult {
  std::vector<TranslatedIntent> plans;
  std::vector<Diagnostic> diagnostics;
  BatchStats stats;
};

// Parses and analyzes a document holding any number of intents, serially.
// Per-intent failures are recorded as diagnostics and skipped; the rest of
// the batch still translates. Wall time covers parse plus analysis.
BatchResult translate_batch(const std::string& source, const AnalyzeOptions& options = {});

}  // namespace araucaria::intent
