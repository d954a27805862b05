// SPDX-License-Identifier: Apache-2.0

#include "araucaria/config/topology.hpp"

#include <set>

#include <nlohmann/json.hpp>

namespace araucaria::config {

namespace {
using nlohmann::json;
}

const SwitchNode* Topology::find_switch(const std::string& id) const {
  for (const auto& sw : switches) {
    if (sw.id == id) return &sw;
  }
  return nullptr;
}

std::vector<Diagnostic> validate_topology(const Topology& topology) {
  std::vector<Diagnostic> diags;
  int mains = 0;
  std::set<std::string> ids;
  for (const auto& sw : topology.switches) {
    if (sw.role == SwitchRole::kMain) ++mains;
    if (!ids.insert(sw.id).second) {
      diags.push_back(make_error({}, "DUPLICATE_SWITCH", "switch id '" + sw.id + "' repeats"));
    }
  }
  if (mains != 1) {
    diags.push_back(make_error({}, "TOPOLOGY_INVALID",
                               "topology needs exactly one main switch, found " +
                                   std::to_string(mains)));
  }
  std::set<std::string> ips;
  for (const auto& server : topology.servers) {
    if (!ips.insert(server.ip).second) {
      diags.push_back(make_error({}, "DUPLICATE_IP", "server ip '" + server.ip + "' repeats"));
    }
    if (topology.find_switch(server.attached_switch) == nullptr) {
      diags.push_back(make_error({}, "UNKNOWN_SWITCH",
                                 "server '" + server.id + "' attaches to unknown switch '" +
                                     server.attached_switch + "'"));
    }
  }
  for (const auto& link : topology.links) {
    for (const auto* end : {&link.a, &link.b}) {
      if (topology.find_switch(end->switch_id) == nullptr) {
        diags.push_back(make_error(
            {}, "UNKNOWN_SWITCH", "link endpoint names unknown switch '" + end->switch_id + "'"));
      }
    }
  }
  return diags;
}

std::string topology_to_json(const Topology& topology) {
  json j;
  json switches = json::array();
  for (const auto& sw : topology.switches) {
    json entry;
    entry["id"] = sw.id;
    entry["role"] = sw.role == SwitchRole::kMain ? "main" : "replica";
    entry["ports"] = sw.ports;
    switches.push_back(std::move(entry));
  }
  j["switches"] = std::move(switches);
  json servers = json::array();
  for (const auto& server : topology.servers) {
    json entry;
    entry["id"] = server.id;
    entry["ip"] = server.ip;
    entry["switch"] = server.attached_switch;
    entry["port"] = server.attached_port;
    servers.push_back(std::move(entry));
  }
  j["servers"] = std::move(servers);
  json links = json::array();
  for (const auto& link : topology.links) {
    json entry;
    entry["a"] = {{"switch", link.a.switch_id}, {"port", link.a.port}};
    entry["b"] = {{"switch", link.b.switch_id}, {"port", link.b.port}};
    links.push_back(std::move(entry));
  }
  j["links"] = std::move(links);
  return j.dump(2) + "\n";
}

std::optional<Topology> topology_from_json(const std::string& json_text,
                                           std::vector<Diagnostic>* diags) {
  auto fail = [&](const std::string& msg) -> std::optional<Topology> {
    if (diags) diags->push_back(make_error({}, "BAD_TOPOLOGY_JSON", msg));
    return std::nullopt;
  };

  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded()) return fail("topology is not valid JSON");

  Topology topology;
  try {
    for (const auto& entry : j.value("switches", json::array())) {
      SwitchNode sw;
      sw.id = entry.at("id").get<std::string>();
      std::string role = entry.at("role").get<std::string>();
      if (role == "main") {
        sw.role = SwitchRole::kMain;
      } else if (role == "replica") {
        sw.role = SwitchRole::kReplica;
      } else {
        return fail("unknown switch role '" + role + "'");
      }
      sw.ports = entry.value("ports", std::vector<int>{});
      topology.switches.push_back(std::move(sw));
    }
    for (const auto& entry : j.value("servers", json::array())) {
      ServerNode server;
      server.id = entry.at("id").get<std::string>();
      server.ip = entry.at("ip").get<std::string>();
      server.attached_switch = entry.at("switch").get<std::string>();
      server.attached_port = entry.at("port").get<int>();
      topology.servers.push_back(std::move(server));
    }
    for (const auto& entry : j.value("links", json::array())) {
      Link link;
      link.a.switch_id = entry.at("a").at("switch").get<std::string>();
      link.a.port = entry.at("a").at("port").get<int>();
      link.b.switch_id = entry.at("b").at("switch").get<std::string>();
      link.b.port = entry.at("b").at("port").get<int>();
      topology.links.push_back(std::move(link));
    }
  } catch (const json::exception& e) {
    return fail(std::string("malformed topology: ") + e.what());
  }
  return topology;
}

Topology make_synthetic_topology(int server_count, int replica_count) {
  Topology topology;

  SwitchNode main;
  main.id = "main";
  main.role = SwitchRole::kMain;
  for (int p = 1; p <= replica_count + server_count + 1; ++p) main.ports.push_back(p);
  topology.switches.push_back(main);

  for (int r = 1; r <= replica_count; ++r) {
    SwitchNode replica;
    replica.id = "r" + std::to_string(r);
    replica.role = SwitchRole::kReplica;
    for (int p = 1; p <= server_count + 1; ++p) replica.ports.push_back(p);
    topology.switches.push_back(replica);
    topology.links.push_back({{"main", r}, {replica.id, 1}});
  }

  for (int s = 1; s <= server_count; ++s) {
    ServerNode server;
    server.id = "s" + std::to_string(s);
    server.ip = "10.0.0." + std::to_string(s);
    server.attached_switch = "main";
    server.attached_port = replica_count + s;
    topology.servers.push_back(std::move(server));
  }

  return topology;
}

}  // namespace araucaria::config
