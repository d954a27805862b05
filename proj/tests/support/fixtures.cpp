// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#include <cstdlib>
#include <stdexcept>

#include "araucaria/p4/parser.hpp"
#include "subprocess.hpp"

namespace testsupport {

const char* const kSyncIntentText =
    "Create intent syncIntent{\n"
    "    functionality: synchronization [\n"
    "                      size: 3\n"
    "                ]\n"
    "    availability: tolerates two failures,\n"
    "    consistency: strong,\n"
    "}\n";

std::string sample_path(const std::string& name) {
  return std::string(ARAUCARIA_SAMPLES_DIR) + "/" + name;
}

std::string template_dir() { return ARAUCARIA_TEMPLATE_DIR; }

std::string cli_path() { return ARAUCARIA_CLI_PATH; }

araucaria::p4::Program load_netgvt() {
  std::string source;
  if (!read_text_file(sample_path("netgvt.p4s"), source)) {
    throw std::runtime_error("missing sample netgvt.p4s");
  }
  auto result = araucaria::p4::parse_program(source, {.source_name = "netgvt.p4s"});
  if (!result.ok()) throw std::runtime_error("sample netgvt.p4s failed to parse");
  return *result.program;
}

araucaria::intent::RefinementPlan make_plan(int replica_count,
                                            araucaria::intent::ConsistencyMode mode,
                                            bool with_merge) {
  araucaria::intent::RefinementPlan plan;
  plan.intent_name = "syncIntent";
  plan.functionality.fname = "synchronization";
  plan.replica_count = replica_count;
  plan.consistency_mode = mode;
  if (with_merge) plan.merge = araucaria::intent::MergeFn::kMaxHdrValue;
  plan.building_blocks = araucaria::intent::standard_building_blocks();
  return plan;
}

araucaria::intent::RefinementPlan listing_one_plan() {
  auto plan = make_plan(2, araucaria::intent::ConsistencyMode::kLinearizable, false);
  plan.functionality.inputs.push_back(
      {"size", {araucaria::intent::InputValue::Kind::kInt, 3, ""}});
  return plan;
}

}  // namespace testsupport
