// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "araucaria/intent/analyzer.hpp"
#include "araucaria/sim/types.hpp"

namespace araucaria::sim {

// Combines the stored value with an incoming payload under the plan's
// merge function. Both choices are commutative; only max is idempotent.
std::int64_t merge_apply(std::int64_t current, std::int64_t incoming, intent::MergeFn fn);

struct ReplaySet {
  std::vector<ReplayEntry> entries;  // ordered by (clock, server)

  bool operator==(const ReplaySet&) const = default;
};

// Computes what must be replayed after a failover: every acknowledged
// clock a server logged that lies strictly above the surviving switch's
// watermark for that server. Input logs may be unordered and sparse.
ReplaySet coordinator_aggregate(const std::map<int, std::int64_t>& replica_watermarks,
                                const std::map<int, std::vector<std::int64_t>>& server_logs);

enum class ApplyOutcome { kApplied, kHeld, kDuplicate };

// Switch-side ingestion state: the replicated computation plus the
// contiguity bookkeeping used to spot replication gaps.
struct SwitchCore {
  IncState inc;
  std::map<int, std::int64_t> watermark;                       // highest contiguous clock
  std::map<int, std::map<std::int64_t, std::int64_t>> pending;  // out-of-order arrivals
};

// Ordered ingestion: applies only the next contiguous clock per server,
// holding later clocks until the gap fills. Value folds as max.
ApplyOutcome apply_ordered(SwitchCore& core, int server, std::int64_t clock, std::int64_t value);

// Merge ingestion: folds clock and value immediately in any order, while
// still tracking the contiguous watermark for replay accounting.
ApplyOutcome apply_merged(SwitchCore& core, int server, std::int64_t clock, std::int64_t value,
                          intent::MergeFn fn);

}  // namespace araucaria::sim
