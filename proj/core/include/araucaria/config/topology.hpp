// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "araucaria/diagnostics.hpp"

namespace araucaria::config {

enum class SwitchRole { kMain, kReplica };

struct SwitchNode {
  std::string id;
  SwitchRole role = SwitchRole::kReplica;
  std::vector<int> ports;

  bool operator==(const SwitchNode&) const = default;
};

struct ServerNode {
  std::string id;
  std::string ip;
  std::string attached_switch;
  int attached_port = 0;

  bool operator==(const ServerNode&) const = default;
};

struct LinkEnd {
  std::string switch_id;
  int port = 0;

  bool operator==(const LinkEnd&) const = default;
};

struct Link {
  LinkEnd a;
  LinkEnd b;

  bool operator==(const Link&) const = default;
};

struct Topology {
  std::vector<SwitchNode> switches;
  std::vector<ServerNode> servers;
  std::vector<Link> links;

  const SwitchNode* find_switch(const std::string& id) const;
  bool operator==(const Topology&) const = default;
};

// Structural checks: exactly one main, unique switch ids and server IPs,
// attachments and link endpoints name declared switches.
std::vector<Diagnostic> validate_topology(const Topology& topology);

std::string topology_to_json(const Topology& topology);
std::optional<Topology> topology_from_json(const std::string& json_text,
                                           std::vector<Diagnostic>* diags = nullptr);

// Star-wired test topology: one main, replica_count replicas on the main's
// first ports, server_count servers on the following ports, and one spare
// main port left free for the mirror session. Replicas get enough ports to
// absorb the servers after a failover.
Topology make_synthetic_topology(int server_count, int replica_count);

}  // namespace araucaria::config
