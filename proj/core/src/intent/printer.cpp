// SPDX-License-Identifier: Apache-2.0

#include "araucaria/intent/printer.hpp"

#include <sstream>

namespace araucaria::intent {
namespace {

void print_value(std::ostream& out, const InputValue& v) {
  switch (v.kind) {
    case InputValue::Kind::kInt: out << v.int_value; break;
    case InputValue::Kind::kIdent: out << v.text; break;
    case InputValue::Kind::kString: out << '"' << v.text << '"'; break;
  }
}

}  // namespace

std::string to_text(const IntentAst& intent) {
  std::ostringstream out;
  out << operation_name(intent.operation) << " intent " << intent.name << " {\n";
  out << "    functionality: " << intent.functionality.fname << " [";
  for (std::size_t i = 0; i < intent.functionality.inputs.size(); ++i) {
    if (i) out << ", ";
    out << intent.functionality.inputs[i].name << ": ";
    print_value(out, intent.functionality.inputs[i].value);
  }
  out << "],\n";
  for (const auto& req : intent.requirements) {
    if (req.is_availability()) {
      const auto& avail = std::get<AvailabilityReq>(req.value);
      out << "    availability: tolerates " << avail.tolerated_failures << " failures,\n";
    } else {
      const auto& cons = std::get<ConsistencyReq>(req.value);
      out << "    consistency: "
          << (cons.level == ConsistencyLevel::kStrong ? "strong" : "eventual");
      if (cons.merge) out << " [" << merge_fn_name(*cons.merge) << "]";
      out << ",\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace araucaria::intent
