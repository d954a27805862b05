// SPDX-License-Identifier: Apache-2.0

#include "araucaria/intent/registry.hpp"

#include <nlohmann/json.hpp>

namespace araucaria::intent {

namespace {
using nlohmann::json;
}

std::optional<RefinementPlan> PlanRegistry::apply(Operation op, const std::string& name,
                                                  const std::optional<RefinementPlan>& plan,
                                                  std::vector<Diagnostic>* diags) {
  auto fail = [&](const std::string& code,
                  const std::string& msg) -> std::optional<RefinementPlan> {
    if (diags) diags->push_back(make_error({}, code, msg));
    return std::nullopt;
  };

  switch (op) {
    case Operation::kCreate:
      if (!plan) return fail("MISSING_PLAN", "create requires a translated plan");
      plans_[name] = *plan;
      return *plan;
    case Operation::kUpdate: {
      auto it = plans_.find(name);
      if (it == plans_.end())
        return fail("UNKNOWN_INTENT", "cannot update '" + name + "': no such intent");
      if (!plan) return fail("MISSING_PLAN", "update requires a translated plan");
      it->second = *plan;
      return it->second;
    }
    case Operation::kDelete: {
      auto it = plans_.find(name);
      if (it == plans_.end())
        return fail("UNKNOWN_INTENT", "cannot delete '" + name + "': no such intent");
      RefinementPlan removed = std::move(it->second);
      plans_.erase(it);
      return removed;
    }
    case Operation::kRead: {
      auto it = plans_.find(name);
      if (it == plans_.end())
        return fail("UNKNOWN_INTENT", "cannot read '" + name + "': no such intent");
      return it->second;
    }
  }
  return fail("UNKNOWN_OPERATION", "unhandled operation");
}

std::string PlanRegistry::to_json() const {
  json j = json::object();
  for (const auto& [name, plan] : plans_) {
    j[name] = json::parse(plan_to_json(plan));
  }
  return j.dump(2) + "\n";
}

std::optional<PlanRegistry> PlanRegistry::from_json(const std::string& json_text,
                                                    std::vector<Diagnostic>* diags) {
  auto fail = [&](const std::string& msg) -> std::optional<PlanRegistry> {
    if (diags) diags->push_back(make_error({}, "BAD_REGISTRY_JSON", msg));
    return std::nullopt;
  };

  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded()) return fail("registry is not valid JSON");
  if (!j.is_object()) return fail("registry root must be an object");

  PlanRegistry registry;
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto plan = plan_from_json(it.value().dump(), diags);
    if (!plan) return fail("registry entry '" + it.key() + "' is malformed");
    registry.plans_[it.key()] = std::move(*plan);
  }
  return registry;
}

}  // namespace araucaria::intent
