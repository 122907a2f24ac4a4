#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "swarmsim/rng.hpp"
#include "swarmsim/time.hpp"
#include "swarmsim/types.hpp"

namespace swarmsim {

struct TrackerParams {
  int response_size = 80;
  SimTime min_request_interval = SimTime::from_minutes(5);
  SimTime heartbeat_period = SimTime::from_minutes(30);
  SimTime expiry_timeout = SimTime::from_minutes(45);
};

// Centralized tracker model: registry of known peers, uniform random peer
// responses, re-request rate limiting, heartbeat bookkeeping and stale-peer
// expiry. In-process only; no wire protocol.
class Tracker {
 public:
  Tracker(TrackerParams params, Rng& rng) : params_(params), rng_(rng) {}

  // Registers the peer and returns a uniform random subset of the members
  // known before registration, never including the requester.
  std::vector<PeerId> announce_join(PeerId p, SimTime now);

  // Returns more peers, or nullopt when the request arrives within
  // min_request_interval of the previous granted one.
  std::optional<std::vector<PeerId>> announce_more(PeerId p, SimTime now);

  // Refreshes the peer's liveness. Unknown peers are ignored: the tracker may
  // already have expired them.
  void heartbeat(PeerId p, SimTime now);

  // Graceful departure; no-op for unknown peers.
  void announce_leave(PeerId p, SimTime now);

  // Drops members whose last heartbeat is more than expiry_timeout old.
  // Runs implicitly at every announce.
  void expire_stale(SimTime now);

  bool is_member(PeerId p) const { return pos_.count(p) != 0; }
  std::size_t member_count() const { return members_.size(); }
  std::optional<SimTime> last_heartbeat(PeerId p) const;
  SimTime next_allowed_request(PeerId p, SimTime now) const;
  const TrackerParams& params() const { return params_; }

 private:
  std::vector<PeerId> random_subset_excluding(PeerId exclude);
  void erase_member(PeerId p);

  TrackerParams params_;
  Rng& rng_;
  std::vector<PeerId> members_;
  std::unordered_map<PeerId, std::size_t> pos_;
  std::unordered_map<PeerId, SimTime> last_heartbeat_;
  std::unordered_map<PeerId, SimTime> last_request_;
};

}  // namespace swarmsim
