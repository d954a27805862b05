// SPDX-License-Identifier: Apache-2.0

#include "araucaria/config/generate.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace araucaria::config {

namespace {
using nlohmann::json;
}

std::int64_t consistency_encoding(intent::ConsistencyMode mode) {
  switch (mode) {
    case intent::ConsistencyMode::kEventual:
      return 0;
    case intent::ConsistencyMode::kLinearizable:
      return 1;
    case intent::ConsistencyMode::kStrongEventual:
      return 2;
  }
  return 0;
}

namespace {

// ports of sw not used by a link endpoint or a server attachment
std::vector<int> free_ports(const Topology& topology, const SwitchNode& sw) {
  std::set<int> used;
  for (const auto& link : topology.links) {
    if (link.a.switch_id == sw.id) used.insert(link.a.port);
    if (link.b.switch_id == sw.id) used.insert(link.b.port);
  }
  for (const auto& server : topology.servers) {
    if (server.attached_switch == sw.id) used.insert(server.attached_port);
  }
  std::vector<int> out;
  for (int port : sw.ports) {
    if (!used.count(port)) out.push_back(port);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// the main's port on the main<->replica link
std::optional<int> port_toward(const Topology& topology, const std::string& from,
                               const std::string& to) {
  for (const auto& link : topology.links) {
    if (link.a.switch_id == from && link.b.switch_id == to) return link.a.port;
    if (link.b.switch_id == from && link.a.switch_id == to) return link.b.port;
  }
  return std::nullopt;
}

}  // namespace

GenerateResult generate_config(const intent::RefinementPlan& plan, const Topology& topology) {
  GenerateResult result;
  result.diagnostics = validate_topology(topology);
  if (has_errors(result.diagnostics)) return result;

  const SwitchNode* main = nullptr;
  std::vector<const SwitchNode*> replicas;
  for (const auto& sw : topology.switches) {
    if (sw.role == SwitchRole::kMain) {
      main = &sw;
    } else {
      replicas.push_back(&sw);
    }
  }
  std::sort(replicas.begin(), replicas.end(),
            [](const SwitchNode* a, const SwitchNode* b) { return a->id < b->id; });

  if (static_cast<std::int64_t>(replicas.size()) < plan.replica_count) {
    result.diagnostics.push_back(make_error(
        {}, "REPLICAS_UNAVAILABLE",
        "plan needs " + std::to_string(plan.replica_count) + " replicas but topology has " +
            std::to_string(replicas.size())));
    return result;
  }
  replicas.resize(static_cast<std::size_t>(plan.replica_count));

  ConfigBundle bundle;

  MulticastGroup group;
  group.multicast_group_id = 1;
  int instance = 1;
  for (const auto* replica : replicas) {
    auto port = port_toward(topology, main->id, replica->id);
    if (!port) {
      result.diagnostics.push_back(make_error(
          {}, "NO_LINK", "no link between main '" + main->id + "' and replica '" + replica->id +
                             "'"));
      return result;
    }
    group.replicas.push_back({*port, instance++});
  }
  bundle.multicast_group_entries.push_back(std::move(group));

  std::vector<int> main_free = free_ports(topology, *main);
  if (main_free.empty()) {
    result.diagnostics.push_back(make_error(
        {}, "NO_FREE_PORT", "main switch has no free port for the mirror session"));
    return result;
  }
  bundle.mirror_sessions.push_back({500, main_free.front()});

  bundle.register_writes.push_back(
      {"consistency_model", 0, consistency_encoding(plan.consistency_mode)});

  for (const auto& server : topology.servers) {
    bundle.server_list.push_back({server.id, server.ip});
  }

  // failover chain: main -> r1 -> r2 -> ... over the selected replicas
  std::string previous = main->id;
  for (const auto* replica : replicas) {
    RecoveryRule rule;
    rule.on_failure_of = previous;
    rule.new_main = replica->id;
    std::vector<int> ports = free_ports(topology, *replica);
    for (std::size_t i = 0; i < topology.servers.size(); ++i) {
      int port = ports.empty() ? 0 : ports[i % ports.size()];
      rule.reroute.push_back({topology.servers[i].id, port});
    }
    bundle.recovery_rules.push_back(std::move(rule));
    previous = replica->id;
  }

  bundle.match_action_entries =
      static_cast<int>(topology.servers.size()) + 2 * static_cast<int>(topology.switches.size());

  result.bundle = std::move(bundle);
  return result;
}

namespace {

// Writer reproducing the published configuration typography: four-space
// indents and a space on both sides of the colon.
class StyledJson {
 public:
  void open_object() { open('{'); }
  void open_array() { open('['); }
  void close_object() { close('}'); }
  void close_array() { close(']'); }

  void key(const std::string& name) {
    comma_if_needed();
    out_ << pad() << '"' << name << "\" : ";
    pending_value_ = true;
  }
  void value(const std::string& text) { raw('"' + text + '"'); }
  void value(std::int64_t number) { raw(std::to_string(number)); }
  void value(int number) { raw(std::to_string(number)); }

  std::string str() const { return out_.str() + "\n"; }

 private:
  void open(char c) {
    if (pending_value_) {
      out_ << c;
      pending_value_ = false;
    } else {
      comma_if_needed();
      out_ << pad() << c;
    }
    ++depth_;
    fresh_scope_ = true;
  }
  void close(char c) {
    --depth_;
    if (!fresh_scope_) out_ << "\n";
    out_ << (fresh_scope_ ? "" : pad()) << c;
    fresh_scope_ = false;
  }
  void raw(const std::string& text) {
    if (pending_value_) {
      out_ << text;
      pending_value_ = false;
    } else {
      comma_if_needed();
      out_ << pad() << text;
    }
  }
  void comma_if_needed() {
    if (fresh_scope_) {
      out_ << "\n";
      fresh_scope_ = false;
    } else if (started_) {
      out_ << ",\n";
    }
    started_ = true;
  }
  std::string pad() const { return std::string(static_cast<std::size_t>(depth_) * 4, ' '); }

  std::ostringstream out_;
  int depth_ = 0;
  bool fresh_scope_ = false;
  bool pending_value_ = false;
  bool started_ = false;
};

}  // namespace

EmittedConfig emit_config(const ConfigBundle& bundle) {
  StyledJson j;
  j.open_object();

  j.key("multicast_group_entries");
  j.open_array();
  for (const auto& group : bundle.multicast_group_entries) {
    j.open_object();
    j.key("multicast_group_id");
    j.value(group.multicast_group_id);
    j.key("replicas");
    j.open_array();
    for (const auto& replica : group.replicas) {
      j.open_object();
      j.key("egress_port");
      j.value(replica.egress_port);
      j.key("instance");
      j.value(replica.instance);
      j.close_object();
    }
    j.close_array();
    j.close_object();
  }
  j.close_array();

  j.key("mirror_sessions");
  j.open_array();
  for (const auto& session : bundle.mirror_sessions) {
    j.open_object();
    j.key("session_id");
    j.value(session.session_id);
    j.key("port");
    j.value(session.port);
    j.close_object();
  }
  j.close_array();

  j.key("register_writes");
  j.open_array();
  for (const auto& write : bundle.register_writes) {
    j.open_object();
    j.key("register_name");
    j.value(write.register_name);
    j.key("index");
    j.value(write.index);
    j.key("value");
    j.value(write.value);
    j.close_object();
  }
  j.close_array();

  j.key("server_list");
  j.open_array();
  for (const auto& server : bundle.server_list) {
    j.open_object();
    j.key("server_id");
    j.value(server.server_id);
    j.key("ip");
    j.value(server.ip);
    j.close_object();
  }
  j.close_array();

  j.key("recovery_rules");
  j.open_array();
  for (const auto& rule : bundle.recovery_rules) {
    j.open_object();
    j.key("on_failure_of");
    j.value(rule.on_failure_of);
    j.key("new_main");
    j.value(rule.new_main);
    j.key("reroute");
    j.open_array();
    for (const auto& entry : rule.reroute) {
      j.open_object();
      j.key("server_id");
      j.value(entry.server_id);
      j.key("egress_port");
      j.value(entry.egress_port);
      j.close_object();
    }
    j.close_array();
    j.close_object();
  }
  j.close_array();

  j.key("match_action_entries");
  j.value(bundle.match_action_entries);

  j.close_object();

  std::ostringstream cli;
  for (const auto& session : bundle.mirror_sessions) {
    cli << "mirroring_add " << session.session_id << " " << session.port << "\n";
  }
  for (const auto& write : bundle.register_writes) {
    cli << "register_write " << write.register_name << " " << write.index << " " << write.value
        << "\n";
  }

  return {j.str(), cli.str()};
}

std::optional<ConfigBundle> parse_config_json(const std::string& json_text,
                                              std::vector<Diagnostic>* diags) {
  auto fail = [&](const std::string& msg) -> std::optional<ConfigBundle> {
    if (diags) diags->push_back(make_error({}, "BAD_CONFIG_JSON", msg));
    return std::nullopt;
  };

  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded()) return fail("config is not valid JSON");

  ConfigBundle bundle;
  try {
    for (const auto& entry : j.value("multicast_group_entries", json::array())) {
      MulticastGroup group;
      group.multicast_group_id = entry.at("multicast_group_id").get<int>();
      for (const auto& replica : entry.value("replicas", json::array())) {
        group.replicas.push_back(
            {replica.at("egress_port").get<int>(), replica.at("instance").get<int>()});
      }
      bundle.multicast_group_entries.push_back(std::move(group));
    }
    for (const auto& entry : j.value("mirror_sessions", json::array())) {
      bundle.mirror_sessions.push_back(
          {entry.at("session_id").get<int>(), entry.at("port").get<int>()});
    }
    for (const auto& entry : j.value("register_writes", json::array())) {
      bundle.register_writes.push_back({entry.at("register_name").get<std::string>(),
                                        entry.at("index").get<std::int64_t>(),
                                        entry.at("value").get<std::int64_t>()});
    }
    for (const auto& entry : j.value("server_list", json::array())) {
      bundle.server_list.push_back(
          {entry.at("server_id").get<std::string>(), entry.at("ip").get<std::string>()});
    }
    for (const auto& entry : j.value("recovery_rules", json::array())) {
      RecoveryRule rule;
      rule.on_failure_of = entry.at("on_failure_of").get<std::string>();
      rule.new_main = entry.at("new_main").get<std::string>();
      for (const auto& reroute : entry.value("reroute", json::array())) {
        rule.reroute.push_back({reroute.at("server_id").get<std::string>(),
                                reroute.at("egress_port").get<int>()});
      }
      bundle.recovery_rules.push_back(std::move(rule));
    }
    bundle.match_action_entries = j.value("match_action_entries", 0);
  } catch (const json::exception& e) {
    return fail(std::string("malformed config: ") + e.what());
  }
  return bundle;
}

}  // namespace araucaria::config
