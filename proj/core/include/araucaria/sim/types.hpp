// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace araucaria::sim {

using Usec = std::int64_t;  // simulated microseconds

constexpr Usec kSecond = 1000000;

// Wire message kinds. data/ack/recovery/collect/heartbeat mirror the
// protocol header's message types; replicate, snapshot, manifest and
// notify are switch-to-switch and coordinator control traffic.
enum class MsgType {
  kData,
  kAck,
  kReplicate,
  kSnapshot,
  kHeartbeat,
  kCollect,
  kWatermarks,
  kAckedLog,
  kManifest,
  kNotify,
  kRecovery,
};

const char* msg_type_name(MsgType type);

struct ReplayEntry {
  int server = 0;
  std::int64_t clock = 0;

  bool operator==(const ReplayEntry&) const = default;
  auto operator<=>(const ReplayEntry&) const = default;
};

struct Packet {
  MsgType type = MsgType::kData;
  std::string src;
  std::string dst;
  Usec send_time = 0;
  int server = -1;            // originating server index for data traffic
  std::int64_t clock = 0;     // logical clock for data traffic
  std::int64_t value = 0;     // payload for the synchronization computation
  // control payloads
  std::map<int, std::int64_t> watermarks;           // snapshot / watermark replies
  std::map<int, std::int64_t> clocks_by_server;     // snapshot per-server clocks
  std::vector<std::int64_t> acked_clocks;           // server log replies
  std::vector<ReplayEntry> manifest;                // manifest / notify replay lists
  std::string new_main;                             // notify
  std::int64_t state_value = 0;                     // snapshot global value
};

// One replication scenario per run. 1: periodic snapshots with total-order
// replay; 2: per-packet replication with total-order replay; 3: per-packet
// replication with merge-on-arrival recovery.
enum class Scenario { kSnapshotReplay = 1, kPerPacketReplay = 2, kMergeOnArrival = 3 };

struct DropRule {
  std::string link_from;
  std::string link_to;
  std::optional<MsgType> only_type;  // match any type when unset
  Usec window_start = 0;
  Usec window_end = 0;
  int max_count = 0;
};

struct FaultSchedule {
  std::string crash_node;  // empty = no crash
  Usec crash_time = 0;
  std::vector<DropRule> drops;
};

struct SimParams {
  int servers = 4;
  int rate_pps = 50;
  Scenario scenario = Scenario::kPerPacketReplay;
  Usec horizon = 10 * kSecond;
  Usec stop_sending = 9 * kSecond;
  std::uint64_t seed = 1;  // recorded in the trace; the core has no stochastic elements

  Usec hop_latency = 1000;
  Usec replay_cost = 100;
  Usec heartbeat_interval = 500000;
  Usec failure_timeout = 2 * kSecond;
  Usec control_spacing = 100;
  Usec snapshot_interval = 4 * kSecond;
  int send_window = 4;

  FaultSchedule fault;
};

// Aggregate send grid: all servers interleave on one clock so traces are
// reproducible across platforms. Slot m fires at m*delta; server m mod n.
inline Usec grid_delta_us(int servers, int rate_pps) {
  std::int64_t total = static_cast<std::int64_t>(servers) * rate_pps;
  if (total <= 0) return kSecond;
  Usec delta = kSecond / total;
  return delta > 0 ? delta : 1;
}

// Deterministic payload for server s (0-based), clock c.
inline std::int64_t payload_value(int s, std::int64_t c) {
  std::uint64_t mix = 2654435761u * static_cast<std::uint64_t>(s + 1) +
                      40503u * static_cast<std::uint64_t>(c);
  return static_cast<std::int64_t>(mix % 1000000u);
}

// Replicated computation state: per-server max clock plus a global value
// folded as the max of payloads.
struct IncState {
  std::map<int, std::int64_t> per_server_clock;
  std::int64_t value = 0;

  bool operator==(const IncState&) const = default;
};

struct FinalNodeState {
  IncState inc;
  std::map<int, std::int64_t> watermark;
  bool alive = true;

  bool operator==(const FinalNodeState&) const = default;
};

}  // namespace araucaria::sim
