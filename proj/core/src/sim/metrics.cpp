// SPDX-License-Identifier: Apache-2.0

#include "araucaria/sim/metrics.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace araucaria::sim {

Metrics compute_metrics(const SimTrace& trace) {
  Metrics m;
  int buckets = static_cast<int>(trace.horizon / kSecond);
  if (buckets < 1) buckets = 1;
  m.rps.assign(static_cast<std::size_t>(trace.servers < 0 ? 0 : trace.servers),
               std::vector<std::int64_t>(static_cast<std::size_t>(buckets), 0));

  std::optional<Usec> crash_at;
  std::optional<Usec> notify_at;
  std::optional<Usec> first_fresh_apply;
  bool ended_complete = false;

  for (const auto& ev : trace.events) {
    switch (ev.kind) {
      case EventKind::kCrash:
        if (!crash_at) {
          crash_at = ev.t;
          m.crashed = true;
          m.crash_s = static_cast<double>(ev.t) / kSecond;
        }
        break;
      case EventKind::kNotify:
        if (!notify_at) notify_at = ev.t;
        if (m.new_main.empty()) m.new_main = ev.aux;
        break;
      case EventKind::kRetransmitSent:
        if (ev.server >= 0) {
          m.retransmissions[ev.server] += 1;
          m.retransmissions_total += 1;
        }
        break;
      case EventKind::kDataApplied:
        if (notify_at && !first_fresh_apply && ev.node == m.new_main && ev.t >= *notify_at) {
          first_fresh_apply = ev.t;
        }
        break;
      case EventKind::kDataAcked:
        if (ev.server >= 0 && ev.server < static_cast<int>(m.rps.size())) {
          auto bucket = static_cast<std::size_t>(ev.t / kSecond);
          if (bucket < m.rps[static_cast<std::size_t>(ev.server)].size()) {
            m.rps[static_cast<std::size_t>(ev.server)][bucket] += 1;
          }
        }
        break;
      case EventKind::kSimEnd:
        ended_complete = ev.aux == "complete";
        break;
      default:
        break;
    }
  }

  if (crash_at && first_fresh_apply) {
    m.recovery_latency_s = static_cast<double>(*first_fresh_apply - *crash_at) / kSecond;
  }
  m.partial = (crash_at && !first_fresh_apply) || !ended_complete;
  return m;
}

std::string rps_to_csv(const Metrics& metrics) {
  std::ostringstream out;
  out << "time,server_id,rps\n";
  for (std::size_t bucket = 0; !metrics.rps.empty() && bucket < metrics.rps[0].size(); ++bucket) {
    for (std::size_t server = 0; server < metrics.rps.size(); ++server) {
      out << bucket << ',' << server << ',' << metrics.rps[server][bucket] << '\n';
    }
  }
  return out.str();
}

std::string metrics_to_json(const Metrics& metrics) {
  nlohmann::json j;
  j["crashed"] = metrics.crashed;
  if (metrics.crash_s) j["crash_s"] = *metrics.crash_s;
  if (metrics.recovery_latency_s) j["recovery_latency_s"] = *metrics.recovery_latency_s;
  if (!metrics.new_main.empty()) j["new_main"] = metrics.new_main;
  nlohmann::json retrans = nlohmann::json::object();
  for (const auto& [server, count] : metrics.retransmissions) {
    retrans[std::to_string(server)] = count;
  }
  j["retransmissions"] = retrans;
  j["retransmissions_total"] = metrics.retransmissions_total;
  j["partial"] = metrics.partial;
  return j.dump(2) + "\n";
}

}  // namespace araucaria::sim
