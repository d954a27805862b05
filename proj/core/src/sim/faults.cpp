// SPDX-License-Identifier: Apache-2.0

#include "araucaria/sim/faults.hpp"

namespace araucaria::sim {

FaultSchedule make_drop_then_crash(int servers, int rate_pps, Usec crash_time,
                                   const std::string& main_id, const std::string& first_replica_id,
                                   int drop_count, Usec hop_latency) {
  FaultSchedule fault;
  fault.crash_node = main_id;
  fault.crash_time = crash_time;
  if (drop_count <= 0) return fault;

  // Replication for grid slot m leaves the main at m*delta + hop, so the
  // last slot replicated before the crash is the largest m with
  // m*delta + hop < crash_time. Opening the window just before slot
  // m - (drop_count - 1) departs catches exactly the trailing packets.
  Usec delta = grid_delta_us(servers, rate_pps);
  Usec latest_departure = crash_time - hop_latency - 1;
  if (latest_departure < 0) return fault;
  std::int64_t last_slot = latest_departure / delta;
  std::int64_t first_dropped = last_slot - (drop_count - 1);
  if (first_dropped < 0) first_dropped = 0;

  DropRule rule;
  rule.link_from = main_id;
  rule.link_to = first_replica_id;
  rule.only_type = MsgType::kReplicate;
  rule.window_start = first_dropped * delta + hop_latency - 1;
  rule.window_end = crash_time;
  rule.max_count = drop_count;
  fault.drops.push_back(rule);
  return fault;
}

}  // namespace araucaria::sim
