// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "araucaria/diagnostics.hpp"
#include "araucaria/sim/types.hpp"

namespace araucaria::sim {

enum class EventKind {
  kDataSent,
  kDataApplied,
  kDataAcked,
  kReplicated,
  kPacketDropped,
  kCrash,
  kHeartbeat,
  kFailureDetected,
  kCollectRequest,
  kCollectReply,
  kManifestSent,
  kNotify,
  kRetransmitSent,
  kReplayApplied,
  kRecoveryDrained,
  kSnapshotSent,
  kSnapshotApplied,
  kSimEnd,
};

const char* event_kind_name(EventKind kind);

// Flat trace record. Field meaning depends on kind; unused fields keep
// their defaults. aux carries the secondary node name where one applies
// (new main for notify, link peer for drops, completion flag for sim_end).
struct TraceEvent {
  Usec t = 0;
  EventKind kind = EventKind::kSimEnd;
  std::string node;
  int server = -1;
  std::int64_t clock = -1;
  std::int64_t value = -1;
  std::string aux;

  bool operator==(const TraceEvent&) const = default;
};

struct SimTrace {
  std::uint64_t seed = 0;
  int servers = 0;
  int scenario = 0;
  Usec horizon = 0;
  std::vector<TraceEvent> events;
  std::map<std::string, FinalNodeState> final_states;

  bool operator==(const SimTrace&) const = default;
};

// One JSON object per line: a header line, then events, then final node
// states. Parsing tolerates reordered lines but not malformed JSON.
std::string trace_to_jsonl(const SimTrace& trace);
SimTrace trace_from_jsonl(const std::string& text, std::vector<Diagnostic>* diagnostics);

}  // namespace araucaria::sim
