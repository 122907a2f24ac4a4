#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "swarmsim/events.hpp"
#include "swarmsim/overlay.hpp"
#include "swarmsim/tracker.hpp"

namespace swarmsim {

enum class StrategyKind : std::uint8_t { tracker_default, preemption };

enum class RejectReason : std::uint8_t { target_gone, target_full };

struct AttemptOutcome {
  enum class Kind : std::uint8_t { accepted, rejected, accepted_with_preemption };

  Kind kind = Kind::rejected;
  ConnectionHandle record = 0;                // valid for accepted*
  RejectReason reason = RejectReason::target_full;  // valid for rejected
  ClosedConnection dropped;                   // valid for accepted_with_preemption

  static AttemptOutcome accepted(ConnectionHandle h) {
    AttemptOutcome o;
    o.kind = Kind::accepted;
    o.record = h;
    return o;
  }
  static AttemptOutcome rejected(RejectReason r) {
    AttemptOutcome o;
    o.kind = Kind::rejected;
    o.reason = r;
    return o;
  }
  static AttemptOutcome accepted_with_preemption(ConnectionHandle h, ClosedConnection d) {
    AttemptOutcome o;
    o.kind = Kind::accepted_with_preemption;
    o.record = h;
    o.dropped = d;
    return o;
  }

  bool is_accepted() const { return kind != Kind::rejected; }
};

// Audit entry recorded (when enabled) every time a full peer admits a
// connection by dropping another one.
struct PreemptionAudit {
  PeerId initiator = 0;
  PeerId target = 0;
  DiscoverySource source = DiscoverySource::tracker;
  int target_peer_set_after = 0;
};

struct PolicyConfig {
  StrategyKind strategy = StrategyKind::tracker_default;
  int min_neighbors = 20;
  // Fraction of max_peer_set a peer may hold as preempted-in connections;
  // unset means no limit.
  std::optional<double> preemption_cap;
  bool record_audit = false;
};

// Connection-establishment policy: the default tracker strategy and the
// preemption strategy, including victim selection and post-drop recovery.
class ConnectionPolicy {
 public:
  ConnectionPolicy(PolicyConfig config, Overlay& overlay, Tracker& tracker,
                   SimEngine& engine);

  // The joining peer attempts connections to its initial peer set in random
  // order until it hits a limit or exhausts the list.
  void on_join(PeerId peer, const std::vector<PeerId>& initial_set, SimTime now);

  // Addresses from a granted re-announce: merge, then attempt non-neighbors.
  void on_more_peers(PeerId peer, const std::vector<PeerId>& addresses, SimTime now);

  // One connection attempt. Requires the initiator to be alive, below both of
  // its limits, and not already connected to the target.
  AttemptOutcome attempt_outgoing(PeerId initiator, PeerId target, SimTime now);

  // Uniform random choice among the target's incoming connections; if it has
  // none, uniform among all of them.
  ConnectionHandle select_drop_victim(PeerId target);

  // Recovery hook fired at a peer whose connection was closed: one immediate
  // reconnection attempt if it has spare capacity, then a tracker re-announce
  // request when the peer set has fallen below min_neighbors. The peer at the
  // other end of the closed connection is excluded from the attempt: dialing
  // the dropper straight back would re-trigger the very preemption that shed
  // the connection, and in a saturated overlay that cycle never terminates.
  void on_connection_dropped(PeerId peer, SimTime now,
                             std::optional<PeerId> counterpart = std::nullopt);

  // Departure: deregister (when graceful), tear down the peer's connections
  // and let every former neighbor react.
  void handle_peer_leave(PeerId peer, SimTime now, bool graceful);

  // Re-announce event: ask the tracker for more peers, honoring its rate limit.
  void handle_reannounce(PeerId peer, SimTime now);

  // Processes queued drop notifications (FIFO) until none remain. Cascades
  // stay iterative, never recursive.
  void drain_pending(SimTime now);

  bool reannounce_pending(PeerId p) const;
  const std::vector<PreemptionAudit>& preemption_audit() const { return audit_; }
  std::uint64_t preemption_count() const { return preemption_count_; }
  const PolicyConfig& config() const { return config_; }

 private:
  void try_connections(PeerId peer, std::vector<PeerId> targets, SimTime now);
  void request_reannounce(PeerId peer, SimTime now);
  bool preemption_cap_allows(PeerId target) const;

  struct DropNotice {
    PeerId peer;
    PeerId counterpart;
  };

  PolicyConfig config_;
  Overlay& overlay_;
  Tracker& tracker_;
  SimEngine& engine_;
  Rng& rng_;
  std::deque<DropNotice> pending_drops_;
  std::vector<char> reannounce_pending_;
  std::vector<ConnectionHandle> victim_scratch_;
  std::vector<PeerId> candidate_scratch_;
  std::vector<PreemptionAudit> audit_;
  std::uint64_t preemption_count_ = 0;
};

}  // namespace swarmsim
