// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "araucaria/sim/types.hpp"

namespace araucaria::sim {

// Canonical fault: a short drop window on the main-to-first-replica link
// that swallows the last drop_count replication packets the main manages
// to forward, then a crash of the main at crash_time. The window start is
// derived from the send grid so exactly the trailing packets match.
FaultSchedule make_drop_then_crash(int servers, int rate_pps, Usec crash_time,
                                   const std::string& main_id, const std::string& first_replica_id,
                                   int drop_count = 3, Usec hop_latency = 1000);

}  // namespace araucaria::sim
