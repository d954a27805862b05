// SPDX-License-Identifier: Apache-2.0

#include "araucaria/sim/protocol.hpp"

#include <algorithm>

namespace araucaria::sim {

std::int64_t merge_apply(std::int64_t current, std::int64_t incoming, intent::MergeFn fn) {
  switch (fn) {
    case intent::MergeFn::kMaxHdrValue: return std::max(current, incoming);
    case intent::MergeFn::kAdd: return current + incoming;
  }
  return current;
}

ReplaySet coordinator_aggregate(const std::map<int, std::int64_t>& replica_watermarks,
                                const std::map<int, std::vector<std::int64_t>>& server_logs) {
  ReplaySet out;
  for (const auto& [server, clocks] : server_logs) {
    std::int64_t watermark = 0;
    if (auto it = replica_watermarks.find(server); it != replica_watermarks.end()) {
      watermark = it->second;
    }
    for (std::int64_t clock : clocks) {
      if (clock > watermark) out.entries.push_back({server, clock});
    }
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const ReplayEntry& a, const ReplayEntry& b) {
              if (a.clock != b.clock) return a.clock < b.clock;
              return a.server < b.server;
            });
  out.entries.erase(std::unique(out.entries.begin(), out.entries.end()), out.entries.end());
  return out;
}

namespace {

void fold(IncState& inc, int server, std::int64_t clock, std::int64_t value, intent::MergeFn fn) {
  auto& psc = inc.per_server_clock[server];
  psc = std::max(psc, clock);
  inc.value = merge_apply(inc.value, value, fn);
}

// Applies any pending clocks that became contiguous after wm advanced.
void drain_pending(SwitchCore& core, int server, bool fold_on_apply) {
  auto pit = core.pending.find(server);
  if (pit == core.pending.end()) return;
  auto& queue = pit->second;
  auto& wm = core.watermark[server];
  while (true) {
    auto next = queue.find(wm + 1);
    if (next == queue.end()) break;
    wm += 1;
    if (fold_on_apply) fold(core.inc, server, next->first, next->second, intent::MergeFn::kMaxHdrValue);
    queue.erase(next);
  }
  if (queue.empty()) core.pending.erase(pit);
}

}  // namespace

ApplyOutcome apply_ordered(SwitchCore& core, int server, std::int64_t clock, std::int64_t value) {
  auto& wm = core.watermark[server];
  if (clock <= wm) return ApplyOutcome::kDuplicate;
  if (clock == wm + 1) {
    wm = clock;
    fold(core.inc, server, clock, value, intent::MergeFn::kMaxHdrValue);
    drain_pending(core, server, true);
    return ApplyOutcome::kApplied;
  }
  core.pending[server][clock] = value;
  return ApplyOutcome::kHeld;
}

ApplyOutcome apply_merged(SwitchCore& core, int server, std::int64_t clock, std::int64_t value,
                          intent::MergeFn fn) {
  auto& wm = core.watermark[server];
  if (clock <= wm) return ApplyOutcome::kDuplicate;
  if (auto pit = core.pending.find(server);
      pit != core.pending.end() && pit->second.count(clock)) {
    return ApplyOutcome::kDuplicate;
  }
  fold(core.inc, server, clock, value, fn);
  if (clock == wm + 1) {
    wm = clock;
    drain_pending(core, server, false);
  } else {
    core.pending[server][clock] = value;
  }
  return ApplyOutcome::kApplied;
}

}  // namespace araucaria::sim
