// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "araucaria/config/topology.hpp"
#include "araucaria/diagnostics.hpp"
#include "araucaria/intent/analyzer.hpp"

namespace araucaria::config {

// consistency_model register encoding written at index 0:
// 0 eventual, 1 strong (linearizable), 2 strong-eventual.
std::int64_t consistency_encoding(intent::ConsistencyMode mode);

struct MulticastReplica {
  int egress_port = 0;
  int instance = 0;

  bool operator==(const MulticastReplica&) const = default;
};

struct MulticastGroup {
  int multicast_group_id = 0;
  std::vector<MulticastReplica> replicas;

  bool operator==(const MulticastGroup&) const = default;
};

struct MirrorSession {
  int session_id = 0;
  int port = 0;

  bool operator==(const MirrorSession&) const = default;
};

struct RegisterWrite {
  std::string register_name;
  std::int64_t index = 0;
  std::int64_t value = 0;

  bool operator==(const RegisterWrite&) const = default;
};

struct ServerEntry {
  std::string server_id;
  std::string ip;

  bool operator==(const ServerEntry&) const = default;
};

struct RerouteEntry {
  std::string server_id;
  int egress_port = 0;

  bool operator==(const RerouteEntry&) const = default;
};

struct RecoveryRule {
  std::string on_failure_of;
  std::string new_main;
  std::vector<RerouteEntry> reroute;

  bool operator==(const RecoveryRule&) const = default;
};

struct ConfigBundle {
  std::vector<MulticastGroup> multicast_group_entries;
  std::vector<MirrorSession> mirror_sessions;
  std::vector<RegisterWrite> register_writes;
  std::vector<ServerEntry> server_list;
  std::vector<RecoveryRule> recovery_rules;
  // forwarding entries, one per server, plus two coordinator entries per
  // switch (the counting scheme behind the documented 49 at 45 servers
  // and 2 switches)
  int match_action_entries = 0;

  bool operator==(const ConfigBundle&) const = default;
};

struct GenerateResult {
  std::optional<ConfigBundle> bundle;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return bundle.has_value(); }
};

// Realizes a plan on a topology: multicast group 1 toward each replica
// (failover order is replicas sorted by id), mirror session 500 on the
// first free main port, the consistency register write, the server list,
// and the failover chain.
GenerateResult generate_config(const intent::RefinementPlan& plan, const Topology& topology);

struct EmittedConfig {
  std::string json_text;  // config.json
  std::string cli_text;   // commands.cli
};

EmittedConfig emit_config(const ConfigBundle& bundle);

std::optional<ConfigBundle> parse_config_json(const std::string& json_text,
                                              std::vector<Diagnostic>* diags = nullptr);

}  // namespace araucaria::config
