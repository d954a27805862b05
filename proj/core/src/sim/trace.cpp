// SPDX-License-Identifier: Apache-2.0

#include "araucaria/sim/trace.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace araucaria::sim {

using nlohmann::json;

const char* msg_type_name(MsgType type) {
  switch (type) {
    case MsgType::kData: return "data";
    case MsgType::kAck: return "ack";
    case MsgType::kReplicate: return "replicate";
    case MsgType::kSnapshot: return "snapshot";
    case MsgType::kHeartbeat: return "heartbeat";
    case MsgType::kCollect: return "collect";
    case MsgType::kWatermarks: return "watermarks";
    case MsgType::kAckedLog: return "acked_log";
    case MsgType::kManifest: return "manifest";
    case MsgType::kNotify: return "notify";
    case MsgType::kRecovery: return "recovery";
  }
  return "unknown";
}

const char* event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::kDataSent: return "data_sent";
    case EventKind::kDataApplied: return "data_applied";
    case EventKind::kDataAcked: return "data_acked";
    case EventKind::kReplicated: return "replicated";
    case EventKind::kPacketDropped: return "packet_dropped";
    case EventKind::kCrash: return "crash";
    case EventKind::kHeartbeat: return "heartbeat";
    case EventKind::kFailureDetected: return "failure_detected";
    case EventKind::kCollectRequest: return "collect_request";
    case EventKind::kCollectReply: return "collect_reply";
    case EventKind::kManifestSent: return "manifest_sent";
    case EventKind::kNotify: return "notify";
    case EventKind::kRetransmitSent: return "retransmit_sent";
    case EventKind::kReplayApplied: return "replay_applied";
    case EventKind::kRecoveryDrained: return "recovery_drained";
    case EventKind::kSnapshotSent: return "snapshot_sent";
    case EventKind::kSnapshotApplied: return "snapshot_applied";
    case EventKind::kSimEnd: return "sim_end";
  }
  return "unknown";
}

namespace {

std::optional<EventKind> event_kind_from_name(const std::string& name) {
  static const std::map<std::string, EventKind> table = {
      {"data_sent", EventKind::kDataSent},
      {"data_applied", EventKind::kDataApplied},
      {"data_acked", EventKind::kDataAcked},
      {"replicated", EventKind::kReplicated},
      {"packet_dropped", EventKind::kPacketDropped},
      {"crash", EventKind::kCrash},
      {"heartbeat", EventKind::kHeartbeat},
      {"failure_detected", EventKind::kFailureDetected},
      {"collect_request", EventKind::kCollectRequest},
      {"collect_reply", EventKind::kCollectReply},
      {"manifest_sent", EventKind::kManifestSent},
      {"notify", EventKind::kNotify},
      {"retransmit_sent", EventKind::kRetransmitSent},
      {"replay_applied", EventKind::kReplayApplied},
      {"recovery_drained", EventKind::kRecoveryDrained},
      {"snapshot_sent", EventKind::kSnapshotSent},
      {"snapshot_applied", EventKind::kSnapshotApplied},
      {"sim_end", EventKind::kSimEnd},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

json clocks_to_json(const std::map<int, std::int64_t>& clocks) {
  json out = json::object();
  for (const auto& [server, clock] : clocks) out[std::to_string(server)] = clock;
  return out;
}

std::map<int, std::int64_t> clocks_from_json(const json& j) {
  std::map<int, std::int64_t> out;
  if (!j.is_object()) return out;
  for (const auto& [key, val] : j.items()) out[std::stoi(key)] = val.get<std::int64_t>();
  return out;
}

}  // namespace

std::string trace_to_jsonl(const SimTrace& trace) {
  std::ostringstream out;
  json header = {
      {"record", "header"},
      {"seed", trace.seed},
      {"servers", trace.servers},
      {"scenario", trace.scenario},
      {"horizon_us", trace.horizon},
  };
  out << header.dump() << '\n';
  for (const auto& ev : trace.events) {
    json line = {
        {"record", "event"},
        {"t_us", ev.t},
        {"kind", event_kind_name(ev.kind)},
    };
    if (!ev.node.empty()) line["node"] = ev.node;
    if (ev.server >= 0) line["server"] = ev.server;
    if (ev.clock >= 0) line["clock"] = ev.clock;
    if (ev.value >= 0) line["value"] = ev.value;
    if (!ev.aux.empty()) line["aux"] = ev.aux;
    out << line.dump() << '\n';
  }
  for (const auto& [node, state] : trace.final_states) {
    json line = {
        {"record", "final_state"},
        {"node", node},
        {"alive", state.alive},
        {"value", state.inc.value},
        {"per_server_clock", clocks_to_json(state.inc.per_server_clock)},
        {"watermark", clocks_to_json(state.watermark)},
    };
    out << line.dump() << '\n';
  }
  return out.str();
}

SimTrace trace_from_jsonl(const std::string& text, std::vector<Diagnostic>* diagnostics) {
  SimTrace trace;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      if (diagnostics) {
        diagnostics->push_back(make_error(SourceLoc{line_no, 1}, "TRACE_PARSE",
                                          "line is not a JSON object"));
      }
      continue;
    }
    std::string record = j.value("record", "");
    if (record == "header") {
      trace.seed = j.value("seed", std::uint64_t{0});
      trace.servers = j.value("servers", 0);
      trace.scenario = j.value("scenario", 0);
      trace.horizon = j.value("horizon_us", Usec{0});
    } else if (record == "event") {
      TraceEvent ev;
      ev.t = j.value("t_us", Usec{0});
      auto kind = event_kind_from_name(j.value("kind", ""));
      if (!kind) {
        if (diagnostics) {
          diagnostics->push_back(make_error(SourceLoc{line_no, 1}, "TRACE_PARSE",
                                            "unknown event kind '" + j.value("kind", "") + "'"));
        }
        continue;
      }
      ev.kind = *kind;
      ev.node = j.value("node", "");
      ev.server = j.value("server", -1);
      ev.clock = j.value("clock", std::int64_t{-1});
      ev.value = j.value("value", std::int64_t{-1});
      ev.aux = j.value("aux", "");
      trace.events.push_back(std::move(ev));
    } else if (record == "final_state") {
      FinalNodeState state;
      state.alive = j.value("alive", true);
      state.inc.value = j.value("value", std::int64_t{0});
      state.inc.per_server_clock = clocks_from_json(j.value("per_server_clock", json::object()));
      state.watermark = clocks_from_json(j.value("watermark", json::object()));
      trace.final_states[j.value("node", "")] = std::move(state);
    } else if (diagnostics) {
      diagnostics->push_back(make_error(SourceLoc{line_no, 1}, "TRACE_PARSE",
                                        "unknown record type '" + record + "'"));
    }
  }
  return trace;
}

}  // namespace araucaria::sim
