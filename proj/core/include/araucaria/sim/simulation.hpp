// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "araucaria/config/generate.hpp"
#include "araucaria/diagnostics.hpp"
#include "araucaria/intent/analyzer.hpp"
#include "araucaria/sim/protocol.hpp"
#include "araucaria/sim/trace.hpp"
#include "araucaria/sim/types.hpp"

namespace araucaria::sim {

class Simulation;

struct ScenarioResult {
  std::vector<Diagnostic> diagnostics;
  std::unique_ptr<Simulation> simulation;  // null when diagnostics carry an error
};

// Wires a refinement plan plus its deployment configuration into a
// runnable simulation. Fails when the server list does not match
// params.servers or scenario 3 lacks a merge function.
ScenarioResult build_scenario(const intent::RefinementPlan& plan,
                              const config::ConfigBundle& bundle, const SimParams& params);

// Deterministic single-threaded event simulation of one deployment: one
// main switch, the plan's replicas, a coordinator and n servers. All
// arithmetic is integer microseconds; equal-time events run in schedule
// order, so a run is exactly reproducible.
class Simulation {
 public:
  SimTrace run();

 private:
  friend ScenarioResult build_scenario(const intent::RefinementPlan& plan,
                                       const config::ConfigBundle& bundle,
                                       const SimParams& params);

  struct ServerNode {
    std::string id;
    int index = 0;
    std::int64_t sent = 0;   // clocks 1..sent issued
    std::int64_t acked = 0;  // contiguous acknowledged prefix
    std::vector<std::int64_t> values;
    int outstanding = 0;
    std::string current_main;
    bool notified = false;
  };

  struct SwitchNode {
    std::string id;
    bool is_main = false;
    bool alive = true;
    SwitchCore core;
    bool recovering = false;
    bool manifest_received = false;
    std::vector<ReplayEntry> manifest;
    std::set<std::pair<int, std::int64_t>> replays_received;
    std::vector<Packet> replay_buffer;
    std::deque<Packet> data_buffer;
  };

  enum class Phase { kMonitoring, kCollecting, kNotifying, kDone };

  struct Coordinator {
    Phase phase = Phase::kMonitoring;
    int heartbeats = 0;
    int expected_replies = 0;
    int replies = 0;
    std::map<std::string, std::map<int, std::int64_t>> replica_watermarks;
    std::map<int, std::vector<std::int64_t>> server_logs;
  };

  struct Event {
    enum class Type {
      kDeliver,
      kGridTick,
      kHeartbeatTick,
      kTimeoutCheck,
      kSnapshotTick,
      kCrash,
      kReplayApply,
      kDrain,
    };
    Usec t = 0;
    std::uint64_t seq = 0;
    Type type = Type::kDeliver;
    Packet pkt;
    std::int64_t a = 0;
    std::string node;
  };

  struct EventAfter {
    bool operator()(const Event& lhs, const Event& rhs) const {
      if (lhs.t != rhs.t) return lhs.t > rhs.t;
      return lhs.seq > rhs.seq;
    }
  };

  void schedule(Event ev);
  void log(Usec t, EventKind kind, const std::string& node, int server = -1,
           std::int64_t clock = -1, std::int64_t value = -1, const std::string& aux = "");
  void send(const std::string& from, const std::string& to, Packet pkt, Usec t_send);
  SwitchNode* find_switch(const std::string& id);
  std::vector<std::string> replica_peers(const std::string& self) const;

  void on_deliver(const Event& ev);
  void on_grid_tick(const Event& ev);
  void on_heartbeat_tick(const Event& ev);
  void on_timeout_check(const Event& ev);
  void on_snapshot_tick(const Event& ev);
  void on_crash(const Event& ev);
  void on_replay_apply(const Event& ev);
  void on_drain(const Event& ev);

  void switch_ingest_data(SwitchNode& sw, const Packet& pkt, Usec t);
  void apply_and_ack(SwitchNode& sw, const Packet& pkt, Usec t);
  void switch_ingest_recovery(SwitchNode& sw, const Packet& pkt, Usec t);
  void check_manifest_complete(SwitchNode& sw, Usec t);
  void finish_recovery(SwitchNode& sw, Usec t);
  void coordinator_heartbeat(Usec t);
  void coordinator_reply(const Packet& pkt, Usec t);
  void begin_collection(Usec t);
  void begin_notification(Usec t);
  void server_ack(ServerNode& srv, const Packet& pkt, Usec t);
  void server_notify(ServerNode& srv, const Packet& pkt, Usec t);
  void server_grid_send(ServerNode& srv, Usec t);
  ApplyOutcome ingest(SwitchCore& core, int server, std::int64_t clock, std::int64_t value) const;

  SimParams params_;
  intent::RefinementPlan plan_;
  std::string main_id_;
  std::string coordinator_id_ = "coordinator";
  std::vector<ServerNode> servers_;
  std::vector<SwitchNode> switches_;  // index 0 = initial main
  std::map<std::string, std::string> failover_;
  Coordinator coord_;
  std::vector<int> drop_counts_;

  std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
  std::uint64_t next_seq_ = 0;
  std::vector<TraceEvent> events_;
  std::string promoted_;
  bool crash_scheduled_ = false;
};

}  // namespace araucaria::sim
