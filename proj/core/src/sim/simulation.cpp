// SPDX-License-Identifier: Apache-2.0

#include "araucaria/sim/simulation.hpp"

#include <algorithm>

namespace araucaria::sim {

namespace {
constexpr SourceLoc kLoc{};
}

ScenarioResult build_scenario(const intent::RefinementPlan& plan,
                              const config::ConfigBundle& bundle, const SimParams& params) {
  ScenarioResult result;
  if (params.servers < 1) {
    result.diagnostics.push_back(
        make_error(kLoc, "SERVER_COUNT", "at least one server is required"));
    return result;
  }
  if (static_cast<int>(bundle.server_list.size()) != params.servers) {
    result.diagnostics.push_back(make_error(
        kLoc, "SERVER_MISMATCH",
        "configuration lists " + std::to_string(bundle.server_list.size()) +
            " servers but the run asks for " + std::to_string(params.servers)));
    return result;
  }
  if (params.scenario == Scenario::kMergeOnArrival && !plan.merge.has_value()) {
    result.diagnostics.push_back(make_error(
        kLoc, "MERGE_REQUIRED", "merge-on-arrival recovery needs a merge function in the plan"));
    return result;
  }
  if (params.stop_sending > params.horizon) {
    result.diagnostics.push_back(
        make_error(kLoc, "BAD_HORIZON", "stop_sending must not exceed the horizon"));
    return result;
  }

  auto sim = std::make_unique<Simulation>();
  sim->params_ = params;
  sim->plan_ = plan;

  sim->main_id_ = bundle.recovery_rules.empty() ? std::string("main")
                                                : bundle.recovery_rules.front().on_failure_of;
  Simulation::SwitchNode main_node;
  main_node.id = sim->main_id_;
  main_node.is_main = true;
  sim->switches_.push_back(main_node);
  for (const auto& rule : bundle.recovery_rules) {
    sim->failover_[rule.on_failure_of] = rule.new_main;
    Simulation::SwitchNode node;
    node.id = rule.new_main;
    sim->switches_.push_back(node);
  }
  for (int i = 0; i < params.servers; ++i) {
    Simulation::ServerNode srv;
    srv.id = bundle.server_list[static_cast<std::size_t>(i)].server_id;
    srv.index = i;
    srv.current_main = sim->main_id_;
    sim->servers_.push_back(std::move(srv));
  }
  sim->drop_counts_.assign(params.fault.drops.size(), 0);

  // Faults are scheduled first so a crash wins every same-time tie.
  if (!params.fault.crash_node.empty()) {
    Simulation::Event crash;
    crash.t = params.fault.crash_time;
    crash.type = Simulation::Event::Type::kCrash;
    crash.node = params.fault.crash_node;
    sim->schedule(std::move(crash));
    sim->crash_scheduled_ = true;
  }
  Simulation::Event hb;
  hb.t = 0;
  hb.type = Simulation::Event::Type::kHeartbeatTick;
  hb.node = sim->main_id_;
  sim->schedule(std::move(hb));
  if (params.scenario == Scenario::kSnapshotReplay) {
    Simulation::Event snap;
    snap.t = params.snapshot_interval;
    snap.type = Simulation::Event::Type::kSnapshotTick;
    snap.node = sim->main_id_;
    sim->schedule(std::move(snap));
  }
  Simulation::Event grid;
  grid.t = 0;
  grid.type = Simulation::Event::Type::kGridTick;
  grid.a = 0;
  sim->schedule(std::move(grid));
  Simulation::Event check;
  check.t = params.failure_timeout;
  check.type = Simulation::Event::Type::kTimeoutCheck;
  check.a = 0;
  sim->schedule(std::move(check));

  result.simulation = std::move(sim);
  return result;
}

void Simulation::schedule(Event ev) {
  ev.seq = next_seq_++;
  queue_.push(std::move(ev));
}

void Simulation::log(Usec t, EventKind kind, const std::string& node, int server,
                     std::int64_t clock, std::int64_t value, const std::string& aux) {
  if (t > params_.horizon) return;
  TraceEvent ev;
  ev.t = t;
  ev.kind = kind;
  ev.node = node;
  ev.server = server;
  ev.clock = clock;
  ev.value = value;
  ev.aux = aux;
  events_.push_back(std::move(ev));
}

void Simulation::send(const std::string& from, const std::string& to, Packet pkt, Usec t_send) {
  if (t_send > params_.horizon) return;
  pkt.src = from;
  pkt.dst = to;
  pkt.send_time = t_send;
  for (std::size_t i = 0; i < params_.fault.drops.size(); ++i) {
    const DropRule& rule = params_.fault.drops[i];
    if (rule.link_from != from || rule.link_to != to) continue;
    if (rule.only_type && *rule.only_type != pkt.type) continue;
    if (t_send < rule.window_start || t_send > rule.window_end) continue;
    if (drop_counts_[i] >= rule.max_count) continue;
    drop_counts_[i] += 1;
    log(t_send, EventKind::kPacketDropped, from, pkt.server, pkt.clock, -1, to);
    return;
  }
  Event ev;
  ev.t = t_send + params_.hop_latency;
  ev.type = Event::Type::kDeliver;
  ev.pkt = std::move(pkt);
  schedule(std::move(ev));
}

Simulation::SwitchNode* Simulation::find_switch(const std::string& id) {
  for (auto& sw : switches_) {
    if (sw.id == id) return &sw;
  }
  return nullptr;
}

std::vector<std::string> Simulation::replica_peers(const std::string& self) const {
  std::vector<std::string> peers;
  for (const auto& sw : switches_) {
    if (sw.id != self && sw.alive && !sw.is_main) peers.push_back(sw.id);
  }
  return peers;
}

ApplyOutcome Simulation::ingest(SwitchCore& core, int server, std::int64_t clock,
                                std::int64_t value) const {
  if (params_.scenario == Scenario::kMergeOnArrival) {
    return apply_merged(core, server, clock, value,
                        plan_.merge.value_or(intent::MergeFn::kMaxHdrValue));
  }
  return apply_ordered(core, server, clock, value);
}

SimTrace Simulation::run() {
  while (!queue_.empty()) {
    Event ev = queue_.top();
    queue_.pop();
    if (ev.t > params_.horizon) continue;
    switch (ev.type) {
      case Event::Type::kDeliver: on_deliver(ev); break;
      case Event::Type::kGridTick: on_grid_tick(ev); break;
      case Event::Type::kHeartbeatTick: on_heartbeat_tick(ev); break;
      case Event::Type::kTimeoutCheck: on_timeout_check(ev); break;
      case Event::Type::kSnapshotTick: on_snapshot_tick(ev); break;
      case Event::Type::kCrash: on_crash(ev); break;
      case Event::Type::kReplayApply: on_replay_apply(ev); break;
      case Event::Type::kDrain: on_drain(ev); break;
    }
  }

  SimTrace trace;
  trace.seed = params_.seed;
  trace.servers = params_.servers;
  trace.scenario = static_cast<int>(params_.scenario);
  trace.horizon = params_.horizon;

  bool complete = true;
  if (crash_scheduled_) {
    SwitchNode* promoted = promoted_.empty() ? nullptr : find_switch(promoted_);
    complete = promoted != nullptr && !promoted->recovering;
  }
  log(params_.horizon, EventKind::kSimEnd, "simulation", -1, -1, -1,
      complete ? "complete" : "incomplete");

  std::stable_sort(events_.begin(), events_.end(),
                   [](const TraceEvent& a, const TraceEvent& b) { return a.t < b.t; });
  trace.events = std::move(events_);

  for (const auto& sw : switches_) {
    FinalNodeState state;
    state.inc = sw.core.inc;
    state.watermark = sw.core.watermark;
    state.alive = sw.alive;
    trace.final_states[sw.id] = state;
  }
  return trace;
}

void Simulation::on_deliver(const Event& ev) {
  const Packet& pkt = ev.pkt;
  Usec t = ev.t;

  if (pkt.dst == coordinator_id_) {
    switch (pkt.type) {
      case MsgType::kHeartbeat: coordinator_heartbeat(t); break;
      case MsgType::kWatermarks:
      case MsgType::kAckedLog: coordinator_reply(pkt, t); break;
      default: break;
    }
    return;
  }

  if (SwitchNode* sw = find_switch(pkt.dst)) {
    if (!sw->alive) return;
    switch (pkt.type) {
      case MsgType::kData:
        switch_ingest_data(*sw, pkt, t);
        break;
      case MsgType::kReplicate: {
        ApplyOutcome outcome = ingest(sw->core, pkt.server, pkt.clock, pkt.value);
        if (outcome == ApplyOutcome::kApplied) {
          log(t, EventKind::kReplicated, sw->id, pkt.server, pkt.clock, pkt.value);
        }
        break;
      }
      case MsgType::kSnapshot:
        sw->core.inc.per_server_clock = pkt.clocks_by_server;
        sw->core.inc.value = pkt.state_value;
        sw->core.watermark = pkt.watermarks;
        sw->core.pending.clear();
        log(t, EventKind::kSnapshotApplied, sw->id);
        break;
      case MsgType::kCollect: {
        Packet reply;
        reply.type = MsgType::kWatermarks;
        reply.watermarks = sw->core.watermark;
        log(t, EventKind::kCollectReply, sw->id);
        send(sw->id, coordinator_id_, std::move(reply), t);
        break;
      }
      case MsgType::kManifest:
        sw->manifest_received = true;
        sw->manifest = pkt.manifest;
        sw->is_main = true;
        if (sw->manifest.empty()) {
          finish_recovery(*sw, t);
        } else {
          sw->recovering = true;
          check_manifest_complete(*sw, t);
        }
        break;
      case MsgType::kRecovery:
        switch_ingest_recovery(*sw, pkt, t);
        break;
      default:
        break;
    }
    return;
  }

  for (auto& srv : servers_) {
    if (srv.id != pkt.dst) continue;
    switch (pkt.type) {
      case MsgType::kAck: server_ack(srv, pkt, t); break;
      case MsgType::kNotify: server_notify(srv, pkt, t); break;
      case MsgType::kCollect: {
        Packet reply;
        reply.type = MsgType::kAckedLog;
        reply.server = srv.index;
        reply.acked_clocks.reserve(static_cast<std::size_t>(srv.acked));
        for (std::int64_t c = 1; c <= srv.acked; ++c) reply.acked_clocks.push_back(c);
        log(t, EventKind::kCollectReply, srv.id, srv.index);
        send(srv.id, coordinator_id_, std::move(reply), t);
        break;
      }
      default: break;
    }
    return;
  }
}

void Simulation::switch_ingest_data(SwitchNode& sw, const Packet& pkt, Usec t) {
  if (sw.recovering || !sw.is_main) {
    sw.data_buffer.push_back(pkt);
    return;
  }
  apply_and_ack(sw, pkt, t);
}

void Simulation::apply_and_ack(SwitchNode& sw, const Packet& pkt, Usec t) {
  ApplyOutcome outcome = ingest(sw.core, pkt.server, pkt.clock, pkt.value);
  if (outcome == ApplyOutcome::kHeld) return;  // gap: wait for the missing clock
  Packet ack;
  ack.type = MsgType::kAck;
  ack.server = pkt.server;
  ack.clock = pkt.clock;
  send(sw.id, pkt.src, std::move(ack), t);
  if (outcome == ApplyOutcome::kDuplicate) return;
  log(t, EventKind::kDataApplied, sw.id, pkt.server, pkt.clock, pkt.value);
  if (params_.scenario != Scenario::kSnapshotReplay) {
    for (const auto& peer : replica_peers(sw.id)) {
      Packet rep;
      rep.type = MsgType::kReplicate;
      rep.server = pkt.server;
      rep.clock = pkt.clock;
      rep.value = pkt.value;
      send(sw.id, peer, std::move(rep), t);
    }
  }
}

void Simulation::switch_ingest_recovery(SwitchNode& sw, const Packet& pkt, Usec t) {
  if (params_.scenario == Scenario::kMergeOnArrival || !sw.recovering) {
    ApplyOutcome outcome = ingest(sw.core, pkt.server, pkt.clock, pkt.value);
    if (outcome != ApplyOutcome::kDuplicate) {
      log(t, EventKind::kReplayApplied, sw.id, pkt.server, pkt.clock, pkt.value);
    }
    if (params_.scenario != Scenario::kSnapshotReplay) {
      for (const auto& peer : replica_peers(sw.id)) {
        Packet rep;
        rep.type = MsgType::kReplicate;
        rep.server = pkt.server;
        rep.clock = pkt.clock;
        rep.value = pkt.value;
        send(sw.id, peer, std::move(rep), t);
      }
    }
    return;
  }
  sw.replay_buffer.push_back(pkt);
  sw.replays_received.insert({pkt.server, pkt.clock});
  check_manifest_complete(sw, t);
}

void Simulation::check_manifest_complete(SwitchNode& sw, Usec t) {
  if (!sw.manifest_received || !sw.recovering) return;
  for (const auto& entry : sw.manifest) {
    if (!sw.replays_received.count({entry.server, entry.clock})) return;
  }
  // Total-order replay: apply strictly by (clock, server), one packet per
  // processing slot, then drain whatever arrived while recovering.
  std::sort(sw.replay_buffer.begin(), sw.replay_buffer.end(),
            [](const Packet& a, const Packet& b) {
              if (a.clock != b.clock) return a.clock < b.clock;
              return a.server < b.server;
            });
  Usec at = t;
  for (const auto& pkt : sw.replay_buffer) {
    at += params_.replay_cost;
    Event apply;
    apply.t = at;
    apply.type = Event::Type::kReplayApply;
    apply.node = sw.id;
    apply.pkt = pkt;
    schedule(std::move(apply));
  }
  sw.replay_buffer.clear();
  Event drain;
  drain.t = at + 1;
  drain.type = Event::Type::kDrain;
  drain.node = sw.id;
  schedule(std::move(drain));
}

void Simulation::finish_recovery(SwitchNode& sw, Usec t) {
  sw.recovering = false;
  std::int64_t buffered = static_cast<std::int64_t>(sw.data_buffer.size());
  log(t, EventKind::kRecoveryDrained, sw.id, -1, -1, buffered);
  std::deque<Packet> pending;
  pending.swap(sw.data_buffer);
  for (const auto& pkt : pending) apply_and_ack(sw, pkt, t);
  if (params_.scenario == Scenario::kSnapshotReplay) {
    Usec next = ((t / params_.snapshot_interval) + 1) * params_.snapshot_interval;
    Event snap;
    snap.t = next;
    snap.type = Event::Type::kSnapshotTick;
    snap.node = sw.id;
    schedule(std::move(snap));
  }
}

void Simulation::on_replay_apply(const Event& ev) {
  SwitchNode* sw = find_switch(ev.node);
  if (!sw || !sw->alive) return;
  ApplyOutcome outcome = ingest(sw->core, ev.pkt.server, ev.pkt.clock, ev.pkt.value);
  if (outcome == ApplyOutcome::kDuplicate) return;
  log(ev.t, EventKind::kReplayApplied, sw->id, ev.pkt.server, ev.pkt.clock, ev.pkt.value);
  if (params_.scenario != Scenario::kSnapshotReplay) {
    for (const auto& peer : replica_peers(sw->id)) {
      Packet rep;
      rep.type = MsgType::kReplicate;
      rep.server = ev.pkt.server;
      rep.clock = ev.pkt.clock;
      rep.value = ev.pkt.value;
      send(sw->id, peer, rep, ev.t);
    }
  }
}

void Simulation::on_drain(const Event& ev) {
  SwitchNode* sw = find_switch(ev.node);
  if (!sw || !sw->alive || !sw->recovering) return;
  finish_recovery(*sw, ev.t);
}

void Simulation::coordinator_heartbeat(Usec t) {
  coord_.heartbeats += 1;
  Event check;
  check.t = t + params_.failure_timeout;
  check.type = Event::Type::kTimeoutCheck;
  check.a = coord_.heartbeats;
  schedule(std::move(check));
}

void Simulation::on_timeout_check(const Event& ev) {
  if (coord_.phase != Phase::kMonitoring) return;
  if (coord_.heartbeats != ev.a) return;  // a newer heartbeat re-armed the timer
  log(ev.t, EventKind::kFailureDetected, coordinator_id_);
  begin_collection(ev.t);
}

void Simulation::begin_collection(Usec t) {
  coord_.phase = Phase::kCollecting;
  coord_.expected_replies = 0;
  Usec at = t;
  for (const auto& sw : switches_) {
    if (!sw.alive || sw.is_main) continue;
    Packet collect;
    collect.type = MsgType::kCollect;
    log(at, EventKind::kCollectRequest, coordinator_id_, -1, -1, -1, sw.id);
    send(coordinator_id_, sw.id, std::move(collect), at);
    coord_.expected_replies += 1;
    at += params_.control_spacing;
  }
  for (const auto& srv : servers_) {
    Packet collect;
    collect.type = MsgType::kCollect;
    log(at, EventKind::kCollectRequest, coordinator_id_, srv.index, -1, -1, srv.id);
    send(coordinator_id_, srv.id, std::move(collect), at);
    coord_.expected_replies += 1;
    at += params_.control_spacing;
  }
  if (coord_.expected_replies == 0) coord_.phase = Phase::kDone;
}

void Simulation::coordinator_reply(const Packet& pkt, Usec t) {
  if (coord_.phase != Phase::kCollecting) return;
  if (pkt.type == MsgType::kWatermarks) {
    coord_.replica_watermarks[pkt.src] = pkt.watermarks;
  } else {
    coord_.server_logs[pkt.server] = pkt.acked_clocks;
  }
  coord_.replies += 1;
  if (coord_.replies == coord_.expected_replies) begin_notification(t);
}

void Simulation::begin_notification(Usec t) {
  coord_.phase = Phase::kNotifying;
  auto rule = failover_.find(params_.fault.crash_node);
  if (rule == failover_.end()) {
    coord_.phase = Phase::kDone;
    return;
  }
  const std::string& chosen = rule->second;
  promoted_ = chosen;

  ReplaySet replay =
      coordinator_aggregate(coord_.replica_watermarks[chosen], coord_.server_logs);

  Packet manifest;
  manifest.type = MsgType::kManifest;
  if (params_.scenario != Scenario::kMergeOnArrival) manifest.manifest = replay.entries;
  log(t, EventKind::kManifestSent, coordinator_id_, -1, -1,
      static_cast<std::int64_t>(manifest.manifest.size()), chosen);
  send(coordinator_id_, chosen, std::move(manifest), t);

  Usec at = t;
  for (const auto& srv : servers_) {
    at += params_.control_spacing;
    Packet notify;
    notify.type = MsgType::kNotify;
    notify.new_main = chosen;
    for (const auto& entry : replay.entries) {
      if (entry.server == srv.index) notify.manifest.push_back(entry);
    }
    log(at, EventKind::kNotify, coordinator_id_, srv.index, -1,
        static_cast<std::int64_t>(notify.manifest.size()), chosen);
    send(coordinator_id_, srv.id, std::move(notify), at);
  }
  coord_.phase = Phase::kDone;
}

void Simulation::server_ack(ServerNode& srv, const Packet& pkt, Usec t) {
  srv.acked = std::max(srv.acked, pkt.clock);
  if (srv.outstanding > 0) srv.outstanding -= 1;
  log(t, EventKind::kDataAcked, srv.id, srv.index, pkt.clock);
}

void Simulation::server_notify(ServerNode& srv, const Packet& pkt, Usec t) {
  srv.current_main = pkt.new_main;
  srv.notified = true;
  srv.outstanding = 0;

  // Replays first, then urgent resends of everything sent but never
  // acknowledged; fresh clocks resume on the regular send grid.
  Usec at = t;
  if (params_.scenario == Scenario::kMergeOnArrival) {
    if (!pkt.manifest.empty()) {
      std::int64_t max_clock = 0;
      std::int64_t merged = 0;
      bool first = true;
      intent::MergeFn fn = plan_.merge.value_or(intent::MergeFn::kMaxHdrValue);
      for (const auto& entry : pkt.manifest) {
        std::int64_t value = srv.values[static_cast<std::size_t>(entry.clock - 1)];
        max_clock = std::max(max_clock, entry.clock);
        merged = first ? value : merge_apply(merged, value, fn);
        first = false;
      }
      at += params_.control_spacing;
      Packet replay;
      replay.type = MsgType::kRecovery;
      replay.server = srv.index;
      replay.clock = max_clock;
      replay.value = merged;
      log(at, EventKind::kRetransmitSent, srv.id, srv.index, max_clock,
          static_cast<std::int64_t>(pkt.manifest.size()), "merged");
      send(srv.id, srv.current_main, std::move(replay), at);
    }
  } else {
    for (const auto& entry : pkt.manifest) {
      at += params_.control_spacing;
      Packet replay;
      replay.type = MsgType::kRecovery;
      replay.server = srv.index;
      replay.clock = entry.clock;
      replay.value = srv.values[static_cast<std::size_t>(entry.clock - 1)];
      log(at, EventKind::kRetransmitSent, srv.id, srv.index, entry.clock);
      send(srv.id, srv.current_main, std::move(replay), at);
    }
  }
  for (std::int64_t clock = srv.acked + 1; clock <= srv.sent; ++clock) {
    at += params_.control_spacing;
    Packet retry;
    retry.type = MsgType::kData;
    retry.server = srv.index;
    retry.clock = clock;
    retry.value = srv.values[static_cast<std::size_t>(clock - 1)];
    srv.outstanding += 1;
    log(at, EventKind::kDataSent, srv.id, srv.index, clock, retry.value, "retry");
    send(srv.id, srv.current_main, std::move(retry), at);
  }
}

void Simulation::server_grid_send(ServerNode& srv, Usec t) {
  if (t >= params_.stop_sending) return;
  if (srv.outstanding >= params_.send_window) return;
  srv.sent += 1;
  std::int64_t clock = srv.sent;
  std::int64_t value = payload_value(srv.index, clock);
  srv.values.push_back(value);
  srv.outstanding += 1;
  Packet data;
  data.type = MsgType::kData;
  data.server = srv.index;
  data.clock = clock;
  data.value = value;
  log(t, EventKind::kDataSent, srv.id, srv.index, clock, value);
  send(srv.id, srv.current_main, std::move(data), t);
}

void Simulation::on_grid_tick(const Event& ev) {
  int n = params_.servers;
  auto& srv = servers_[static_cast<std::size_t>(ev.a % n)];
  server_grid_send(srv, ev.t);
  Event next;
  next.t = (ev.a + 1) * grid_delta_us(n, params_.rate_pps);
  next.type = Event::Type::kGridTick;
  next.a = ev.a + 1;
  if (next.t <= params_.horizon) schedule(std::move(next));
}

void Simulation::on_heartbeat_tick(const Event& ev) {
  SwitchNode* sw = find_switch(ev.node);
  if (sw && sw->alive) {
    Packet hb;
    hb.type = MsgType::kHeartbeat;
    log(ev.t, EventKind::kHeartbeat, sw->id);
    send(sw->id, coordinator_id_, std::move(hb), ev.t);
  }
  Event next;
  next.t = ev.t + params_.heartbeat_interval;
  next.type = Event::Type::kHeartbeatTick;
  next.node = ev.node;
  if (next.t <= params_.horizon) schedule(std::move(next));
}

void Simulation::on_snapshot_tick(const Event& ev) {
  SwitchNode* sw = find_switch(ev.node);
  if (sw && sw->alive && sw->is_main && !sw->recovering) {
    log(ev.t, EventKind::kSnapshotSent, sw->id);
    for (const auto& peer : replica_peers(sw->id)) {
      Packet snap;
      snap.type = MsgType::kSnapshot;
      snap.watermarks = sw->core.watermark;
      snap.clocks_by_server = sw->core.inc.per_server_clock;
      snap.state_value = sw->core.inc.value;
      send(sw->id, peer, std::move(snap), ev.t);
    }
    Event next;
    next.t = ev.t + params_.snapshot_interval;
    next.type = Event::Type::kSnapshotTick;
    next.node = ev.node;
    if (next.t <= params_.horizon) schedule(std::move(next));
  }
}

void Simulation::on_crash(const Event& ev) {
  SwitchNode* sw = find_switch(ev.node);
  if (!sw || !sw->alive) return;
  sw->alive = false;
  log(ev.t, EventKind::kCrash, sw->id);
}

}  // namespace araucaria::sim
