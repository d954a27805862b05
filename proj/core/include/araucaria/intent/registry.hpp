// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "araucaria/diagnostics.hpp"
#include "araucaria/intent/analyzer.hpp"
#include "araucaria/intent/ast.hpp"

namespace araucaria::intent {

// Name-keyed store of deployed plans. Create inserts or replaces; Delete,
// Update and Read require the name to exist already. Persisted as a single
// JSON object mapping names to plans.
class PlanRegistry {
 public:
  // Applies one analyzed intent according to its operation. For Read the
  // registry is unchanged and the stored plan is returned. Returns nullopt
  // plus an error diagnostic when the operation cannot be applied.
  std::optional<RefinementPlan> apply(Operation op, const std::string& name,
                                      const std::optional<RefinementPlan>& plan,
                                      std::vector<Diagnostic>* diags);

  bool contains(const std::string& name) const { return plans_.count(name) > 0; }
  const std::map<std::string, RefinementPlan>& plans() const { return plans_; }

  std::string to_json() const;
  static std::optional<PlanRegistry> from_json(const std::string& json_text,
                                               std::vector<Diagnostic>* diags = nullptr);

 private:
  std::map<std::string, RefinementPlan> plans_;
};

}  // namespace araucaria::intent
