#include "swarmsim/strategy.hpp"

#include <cmath>
#include <stdexcept>

namespace swarmsim {

ConnectionPolicy::ConnectionPolicy(PolicyConfig config, Overlay& overlay,
                                   Tracker& tracker, SimEngine& engine)
    : config_(config),
      overlay_(overlay),
      tracker_(tracker),
      engine_(engine),
      rng_(engine.rng()) {
  if (config_.preemption_cap &&
      (*config_.preemption_cap <= 0.0 || *config_.preemption_cap > 1.0))
    throw std::logic_error("ConnectionPolicy: preemption cap outside (0, 1]");
}

bool ConnectionPolicy::reannounce_pending(PeerId p) const {
  return p < reannounce_pending_.size() && reannounce_pending_[p] != 0;
}

bool ConnectionPolicy::preemption_cap_allows(PeerId target) const {
  if (!config_.preemption_cap) return true;
  const int limit = static_cast<int>(
      std::ceil(*config_.preemption_cap * overlay_.max_peer_set(target) - 1e-9));
  return overlay_.preempted_in_count(target) < limit;
}

AttemptOutcome ConnectionPolicy::attempt_outgoing(PeerId initiator, PeerId target,
                                                  SimTime now) {
  if (!overlay_.alive(initiator))
    throw std::logic_error("attempt_outgoing: initiator not alive");
  if (initiator == target)
    throw std::logic_error("attempt_outgoing: self connection");
  if (overlay_.outgoing_count(initiator) >= overlay_.max_outgoing(initiator))
    throw std::logic_error("attempt_outgoing: initiator at outgoing cap");
  if (overlay_.peer_set_size(initiator) >= overlay_.max_peer_set(initiator))
    throw std::logic_error("attempt_outgoing: initiator peer set full");
  if (overlay_.connected(initiator, target))
    throw std::logic_error("attempt_outgoing: already neighbors");

  if (!overlay_.alive(target)) {
    // Stands in for a failed dial: drop the stale address.
    overlay_.forget_address(initiator, target);
    return AttemptOutcome::rejected(RejectReason::target_gone);
  }

  const auto source = overlay_.address_source(initiator, target);
  if (!source)
    throw std::logic_error("attempt_outgoing: target address unknown to initiator");

  if (overlay_.peer_set_size(target) < overlay_.max_peer_set(target)) {
    const ConnectionHandle h =
        overlay_.open_connection(initiator, target, *source, now, false);
    return AttemptOutcome::accepted(h);
  }

  if (config_.strategy == StrategyKind::preemption &&
      *source == DiscoverySource::tracker && preemption_cap_allows(target)) {
    const ConnectionHandle victim = select_drop_victim(target);
    const ClosedConnection dropped = overlay_.close_connection(victim);
    pending_drops_.push_back({dropped.initiator, dropped.acceptor});
    pending_drops_.push_back({dropped.acceptor, dropped.initiator});
    const ConnectionHandle h =
        overlay_.open_connection(initiator, target, *source, now, true);
    ++preemption_count_;
    if (config_.record_audit)
      audit_.push_back(
          {initiator, target, *source, overlay_.peer_set_size(target)});
    return AttemptOutcome::accepted_with_preemption(h, dropped);
  }

  return AttemptOutcome::rejected(RejectReason::target_full);
}

ConnectionHandle ConnectionPolicy::select_drop_victim(PeerId target) {
  const auto& records = overlay_.records_of(target);
  if (records.empty())
    throw std::logic_error("select_drop_victim: empty peer set");
  victim_scratch_.clear();
  for (ConnectionHandle h : records)
    if (overlay_.record(h).acceptor == target) victim_scratch_.push_back(h);
  const auto& pool = victim_scratch_.empty() ? records : victim_scratch_;
  return pool[rng_.next_below(pool.size())];
}

void ConnectionPolicy::try_connections(PeerId peer, std::vector<PeerId> targets,
                                       SimTime now) {
  rng_.shuffle(targets);
  for (PeerId target : targets) {
    if (overlay_.outgoing_count(peer) >= overlay_.max_outgoing(peer)) break;
    if (overlay_.peer_set_size(peer) >= overlay_.max_peer_set(peer)) break;
    // The peer set can grow mid-loop through recovery cascades; skip targets
    // that became neighbors since the list was handed out.
    if (target == peer || overlay_.connected(peer, target)) continue;
    attempt_outgoing(peer, target, now);
    drain_pending(now);
  }
}

void ConnectionPolicy::on_join(PeerId peer, const std::vector<PeerId>& initial_set,
                               SimTime now) {
  for (PeerId addr : initial_set)
    overlay_.learn_address(peer, addr, DiscoverySource::tracker);
  try_connections(peer, initial_set, now);
}

void ConnectionPolicy::on_more_peers(PeerId peer,
                                     const std::vector<PeerId>& addresses,
                                     SimTime now) {
  for (PeerId addr : addresses)
    overlay_.learn_address(peer, addr, DiscoverySource::tracker);
  try_connections(peer, addresses, now);
}

void ConnectionPolicy::on_connection_dropped(PeerId peer, SimTime now,
                                             std::optional<PeerId> counterpart) {
  if (!overlay_.alive(peer)) return;
  if (overlay_.outgoing_count(peer) < overlay_.max_outgoing(peer) &&
      overlay_.peer_set_size(peer) < overlay_.max_peer_set(peer)) {
    candidate_scratch_.clear();
    for (const auto& [addr, src] : overlay_.known_addresses(peer)) {
      if (counterpart && addr == *counterpart) continue;
      if (!overlay_.connected(peer, addr)) candidate_scratch_.push_back(addr);
    }
    if (!candidate_scratch_.empty()) {
      const PeerId target =
          candidate_scratch_[rng_.next_below(candidate_scratch_.size())];
      attempt_outgoing(peer, target, now);
    }
  }
  if (overlay_.alive(peer) &&
      overlay_.peer_set_size(peer) < config_.min_neighbors)
    request_reannounce(peer, now);
}

void ConnectionPolicy::request_reannounce(PeerId peer, SimTime now) {
  if (peer >= reannounce_pending_.size())
    reannounce_pending_.resize(overlay_.peer_count(), 0);
  if (reannounce_pending_[peer]) return;
  if (!tracker_.is_member(peer)) return;
  reannounce_pending_[peer] = 1;
  engine_.schedule(tracker_.next_allowed_request(peer, now),
                   EventKind::tracker_reannounce, peer);
}

void ConnectionPolicy::handle_reannounce(PeerId peer, SimTime now) {
  if (peer < reannounce_pending_.size()) reannounce_pending_[peer] = 0;
  if (!overlay_.alive(peer)) return;
  if (overlay_.peer_set_size(peer) >= config_.min_neighbors) return;
  if (!tracker_.is_member(peer)) return;
  auto response = tracker_.announce_more(peer, now);
  if (!response) {
    // Rate-limited; next_allowed_request is strictly in the future here.
    request_reannounce(peer, now);
    return;
  }
  on_more_peers(peer, *response, now);
  drain_pending(now);
}

void ConnectionPolicy::handle_peer_leave(PeerId peer, SimTime now, bool graceful) {
  if (graceful) tracker_.announce_leave(peer, now);
  const std::vector<PeerId> neighbors = overlay_.remove_peer(peer);
  for (PeerId n : neighbors) pending_drops_.push_back({n, peer});
  drain_pending(now);
}

void ConnectionPolicy::drain_pending(SimTime now) {
  while (!pending_drops_.empty()) {
    const DropNotice notice = pending_drops_.front();
    pending_drops_.pop_front();
    on_connection_dropped(notice.peer, now, notice.counterpart);
  }
}

}  // namespace swarmsim
