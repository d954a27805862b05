// SPDX-License-Identifier: Apache-2.0

#include <string>
#include <vector>

#include "araucaria/config/generate.hpp"
#include "araucaria/config/topology.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "subprocess.hpp"

using namespace araucaria;
using namespace araucaria::config;

namespace {

bool has_code(const std::vector<Diagnostic>& diags, const std::string& code) {
  for (const auto& d : diags) {
    if (d.code == code) return true;
  }
  return false;
}

ConfigBundle generate_ok(const intent::RefinementPlan& plan, const Topology& topology) {
  auto result = generate_config(plan, topology);
  REQUIRE_MESSAGE(result.ok(), format_diagnostics("config", result.diagnostics));
  return *result.bundle;
}

}  // namespace

TEST_CASE("synthetic topology is star wired with a spare mirror port") {
  auto topology = make_synthetic_topology(4, 2);
  REQUIRE(topology.switches.size() == 3);
  const auto& main_switch = topology.switches.front();
  CHECK(main_switch.id == "main");
  CHECK(main_switch.role == SwitchRole::kMain);
  CHECK(main_switch.ports.size() == 7);  // 2 replicas + 4 servers + 1 spare
  REQUIRE(topology.servers.size() == 4);
  CHECK(topology.servers[0].ip == "10.0.0.1");
  CHECK(topology.servers[3].ip == "10.0.0.4");
  CHECK(topology.servers[0].attached_switch == "main");
  CHECK(topology.servers[0].attached_port == 3);  // replicas hold ports 1 and 2
  CHECK(validate_topology(topology).empty());
}

TEST_CASE("topology json round trips and the sample file matches") {
  auto topology = make_synthetic_topology(4, 2);
  auto restored = topology_from_json(topology_to_json(topology));
  REQUIRE(restored.has_value());
  CHECK(*restored == topology);

  std::string sample_text;
  REQUIRE(testsupport::read_text_file(testsupport::sample_path("topology.json"), sample_text));
  auto sample = topology_from_json(sample_text);
  REQUIRE(sample.has_value());
  CHECK(*sample == topology);
}

TEST_CASE("topology validation catches structural mistakes") {
  auto topology = make_synthetic_topology(2, 1);

  auto no_main = topology;
  no_main.switches.front().role = SwitchRole::kReplica;
  CHECK_FALSE(validate_topology(no_main).empty());

  auto dup_switch = topology;
  dup_switch.switches.push_back(dup_switch.switches.front());
  CHECK_FALSE(validate_topology(dup_switch).empty());

  auto bad_attach = topology;
  bad_attach.servers.front().attached_switch = "ghost";
  CHECK_FALSE(validate_topology(bad_attach).empty());

  auto bad_link = topology;
  bad_link.links.front().a.switch_id = "ghost";
  CHECK_FALSE(validate_topology(bad_link).empty());
}

TEST_CASE("multicast group one covers the replicas in failover order") {
  auto bundle = generate_ok(testsupport::listing_one_plan(), make_synthetic_topology(4, 2));
  REQUIRE(bundle.multicast_group_entries.size() == 1);
  const auto& group = bundle.multicast_group_entries.front();
  CHECK(group.multicast_group_id == 1);
  REQUIRE(group.replicas.size() == 2);
  CHECK(group.replicas[0].egress_port == 1);  // r1 hangs off main port 1
  CHECK(group.replicas[0].instance == 1);
  CHECK(group.replicas[1].egress_port == 2);
  CHECK(group.replicas[1].instance == 2);
}

TEST_CASE("mirror session five hundred lands on the first free main port") {
  auto bundle = generate_ok(testsupport::listing_one_plan(), make_synthetic_topology(4, 2));
  REQUIRE(bundle.mirror_sessions.size() == 1);
  CHECK(bundle.mirror_sessions[0].session_id == 500);
  CHECK(bundle.mirror_sessions[0].port == 7);  // ports 1..6 are wired
}

TEST_CASE("consistency encodings cover the three modes") {
  CHECK(consistency_encoding(intent::ConsistencyMode::kEventual) == 0);
  CHECK(consistency_encoding(intent::ConsistencyMode::kLinearizable) == 1);
  CHECK(consistency_encoding(intent::ConsistencyMode::kStrongEventual) == 2);

  auto bundle = generate_ok(testsupport::listing_one_plan(), make_synthetic_topology(4, 2));
  REQUIRE(bundle.register_writes.size() == 1);
  CHECK(bundle.register_writes[0].register_name == "consistency_model");
  CHECK(bundle.register_writes[0].index == 0);
  CHECK(bundle.register_writes[0].value == 1);
}

TEST_CASE("recovery rules chain main through the replicas") {
  auto bundle = generate_ok(testsupport::listing_one_plan(), make_synthetic_topology(4, 2));
  REQUIRE(bundle.recovery_rules.size() == 2);
  CHECK(bundle.recovery_rules[0].on_failure_of == "main");
  CHECK(bundle.recovery_rules[0].new_main == "r1");
  CHECK(bundle.recovery_rules[1].on_failure_of == "r1");
  CHECK(bundle.recovery_rules[1].new_main == "r2");

  // reroute spreads the four servers over the new main's ports round robin
  const auto& reroute = bundle.recovery_rules[0].reroute;
  REQUIRE(reroute.size() == 4);
  CHECK(reroute[0].server_id == "s1");
  for (const auto& entry : reroute) CHECK(entry.egress_port > 0);
}

TEST_CASE("server list follows the topology order") {
  auto bundle = generate_ok(testsupport::listing_one_plan(), make_synthetic_topology(4, 2));
  REQUIRE(bundle.server_list.size() == 4);
  CHECK(bundle.server_list[0].server_id == "s1");
  CHECK(bundle.server_list[0].ip == "10.0.0.1");
  CHECK(bundle.server_list[3].server_id == "s4");
}

TEST_CASE("forty five servers and two switches need forty nine entries") {
  auto plan = testsupport::make_plan(1, intent::ConsistencyMode::kLinearizable, false);
  auto bundle = generate_ok(plan, make_synthetic_topology(45, 1));
  CHECK(bundle.match_action_entries == 49);

  auto small = generate_ok(testsupport::listing_one_plan(), make_synthetic_topology(4, 2));
  CHECK(small.match_action_entries == 4 + 2 * 3);
}

TEST_CASE("replica shortage is an error") {
  auto plan = testsupport::make_plan(3, intent::ConsistencyMode::kLinearizable, false);
  auto result = generate_config(plan, make_synthetic_topology(4, 2));
  CHECK_FALSE(result.ok());
  CHECK(has_errors(result.diagnostics));
}

TEST_CASE("emitted cli commands use the documented forms") {
  auto bundle = generate_ok(testsupport::listing_one_plan(), make_synthetic_topology(4, 2));
  auto emitted = emit_config(bundle);
  CHECK(emitted.cli_text.find("register_write consistency_model 0 1\n") != std::string::npos);
  CHECK(emitted.cli_text.find("mirroring_add 500 7\n") != std::string::npos);

  // a session on port three emits the canonical mirroring line
  ConfigBundle direct;
  direct.mirror_sessions.push_back({500, 3});
  CHECK(emit_config(direct).cli_text.find("mirroring_add 500 3\n") != std::string::npos);
}

TEST_CASE("emitted json uses spaced key separators") {
  auto bundle = generate_ok(testsupport::listing_one_plan(), make_synthetic_topology(4, 2));
  auto emitted = emit_config(bundle);
  CHECK(emitted.json_text.find("\"multicast_group_id\" : 1") != std::string::npos);
  CHECK(emitted.json_text.find("\"replicas\" :") != std::string::npos);
  // no collapsed separators anywhere
  CHECK(emitted.json_text.find("\":") == std::string::npos);
}

TEST_CASE("config json round trips") {
  auto bundle = generate_ok(testsupport::listing_one_plan(), make_synthetic_topology(4, 2));
  auto emitted = emit_config(bundle);
  auto restored = parse_config_json(emitted.json_text);
  REQUIRE(restored.has_value());
  CHECK(*restored == bundle);

  std::vector<Diagnostic> diags;
  CHECK_FALSE(parse_config_json("[1, 2]", &diags).has_value());
  CHECK(has_errors(diags));
}

TEST_CASE("eventual plans run without replicas or mirror traffic") {
  auto plan = testsupport::make_plan(0, intent::ConsistencyMode::kEventual, false);
  auto result = generate_config(plan, make_synthetic_topology(4, 0));
  REQUIRE_MESSAGE(result.ok(), format_diagnostics("config", result.diagnostics));
  CHECK(result.bundle->multicast_group_entries.front().replicas.empty());
  CHECK(result.bundle->register_writes.front().value == 0);
  CHECK(result.bundle->recovery_rules.empty());
}
