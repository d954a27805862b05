// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "araucaria/sim/trace.hpp"

namespace araucaria::sim {

// Everything here is recomputed from the event stream alone, so a trace
// reloaded from disk yields identical numbers.
struct Metrics {
  bool crashed = false;
  std::optional<double> crash_s;
  // Crash to the first regular data packet applied at the promoted switch.
  std::optional<double> recovery_latency_s;
  std::string new_main;
  std::map<int, std::int64_t> retransmissions;  // recovery resends per server
  std::int64_t retransmissions_total = 0;
  // Acknowledgements received per server per one-second bucket.
  std::vector<std::vector<std::int64_t>> rps;
  // A crash happened but recovery did not finish inside the horizon.
  bool partial = false;
};

Metrics compute_metrics(const SimTrace& trace);

// rows: time,server_id,rps
std::string rps_to_csv(const Metrics& metrics);

std::string metrics_to_json(const Metrics& metrics);

}  // namespace araucaria::sim
