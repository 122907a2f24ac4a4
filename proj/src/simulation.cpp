#include "swarmsim/simulation.hpp"

#include <stdexcept>

namespace swarmsim {

namespace {

void validate(const RunConfig& c) {
  if (c.max_peer_set < 1) throw std::logic_error("RunConfig: max_peer_set < 1");
  if (c.max_outgoing < 1 || c.max_outgoing > c.max_peer_set)
    throw std::logic_error("RunConfig: max_outgoing outside [1, max_peer_set]");
  if (c.min_neighbors < 0) throw std::logic_error("RunConfig: negative min_neighbors");
  if (c.tracker.response_size < 0)
    throw std::logic_error("RunConfig: negative tracker response size");
  if (c.workload.amplitude < 0) throw std::logic_error("RunConfig: negative amplitude");
  if (c.workload.decay <= 0) throw std::logic_error("RunConfig: decay must be positive");
  if (c.workload.active_slots < 0)
    throw std::logic_error("RunConfig: negative active_slots");
  if (c.workload.slot_length.ms() <= 0)
    throw std::logic_error("RunConfig: slot_length must be positive");
  if (c.workload.lifetime_min > c.workload.lifetime_max)
    throw std::logic_error("RunConfig: lifetime_min > lifetime_max");
  if (c.preemption_cap && (*c.preemption_cap <= 0.0 || *c.preemption_cap > 1.0))
    throw std::logic_error("RunConfig: preemption_cap outside (0, 1]");
  for (SimTime t : c.snapshot_times)
    if (t > c.horizon)
      throw std::logic_error("RunConfig: snapshot time beyond horizon");
}

}  // namespace

Simulation::Simulation(RunConfig config)
    : config_(std::move(config)), engine_(config_.seed) {
  validate(config_);
  tracker_ = std::make_unique<Tracker>(config_.tracker, engine_.rng());
  PolicyConfig pc;
  pc.strategy = config_.strategy;
  pc.min_neighbors = config_.min_neighbors;
  pc.preemption_cap = config_.preemption_cap;
  pc.record_audit = config_.record_audit;
  policy_ = std::make_unique<ConnectionPolicy>(pc, overlay_, *tracker_, engine_);
  engine_.set_handler([this](const Event& e) {
    dispatch(e);
    if (config_.record_event_log)
      event_log_.push_back({e.time, e.seq, e.kind, e.peer});
    if (observer_) observer_(*this, e);
  });
}

void Simulation::run() {
  if (ran_) throw std::logic_error("Simulation::run: already ran");
  ran_ = true;

  schedule_ = build_schedule(config_.workload, engine_.rng());
  overlay_.reserve_peers(schedule_.size());

  // Snapshots are scheduled first so that, at equal timestamps, they precede
  // that instant's departures and arrivals: the t-minute snapshot sees every
  // join in [0, t) and none of the leave events that land exactly on t.
  for (std::uint32_t i = 0; i < config_.snapshot_times.size(); ++i)
    engine_.schedule(config_.snapshot_times[i], EventKind::snapshot, 0, i);
  for (const PeerPlan& p : schedule_)
    engine_.schedule(p.join_time, EventKind::peer_join, p.join_index);
  for (const PeerPlan& p : schedule_)
    if (p.leave_time)
      engine_.schedule(*p.leave_time, EventKind::peer_leave, p.join_index);

  engine_.run_until(config_.horizon);
}

void Simulation::dispatch(const Event& e) {
  switch (e.kind) {
    case EventKind::peer_join: {
      const PeerId id =
          overlay_.add_peer(e.time, config_.max_peer_set, config_.max_outgoing);
      if (id != e.peer)
        throw std::logic_error("Simulation: join order out of sync with schedule");
      const auto initial = tracker_->announce_join(id, e.time);
      policy_->on_join(id, initial, e.time);
      policy_->drain_pending(e.time);
      engine_.schedule(e.time + config_.tracker.heartbeat_period,
                       EventKind::heartbeat, id);
      break;
    }
    case EventKind::peer_leave:
      policy_->handle_peer_leave(e.peer, e.time, !config_.ungraceful_leaves);
      break;
    case EventKind::tracker_reannounce:
      policy_->handle_reannounce(e.peer, e.time);
      policy_->drain_pending(e.time);
      break;
    case EventKind::heartbeat:
      if (overlay_.alive(e.peer)) {
        tracker_->heartbeat(e.peer, e.time);
        engine_.schedule(e.time + config_.tracker.heartbeat_period,
                         EventKind::heartbeat, e.peer);
      }
      break;
    case EventKind::snapshot:
      capture_snapshot(e.snapshot_index);
      break;
  }
}

void Simulation::capture_snapshot(std::uint32_t index) {
  OverlaySnapshot snap;
  snap.taken_at = config_.snapshot_times[index];
  snap.alive_peers = overlay_.alive_ids();
  snap.edges = overlay_.snapshot_edges();
  snap.max_peer_set = config_.max_peer_set;
  snap.first_group_size = config_.max_peer_set;
  MetricsSnapshot metrics = compute_metrics(snap);
  snapshots_.push_back({std::move(snap), metrics});
}

}  // namespace swarmsim
