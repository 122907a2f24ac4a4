#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "swarmsim/rng.hpp"
#include "swarmsim/time.hpp"
#include "swarmsim/types.hpp"

namespace swarmsim {

enum class EventKind : std::uint8_t {
  peer_join,
  peer_leave,
  tracker_reannounce,
  snapshot,
  heartbeat,
};

struct Event {
  SimTime time;
  std::uint64_t seq = 0;  // assigned at scheduling; breaks same-time ties
  EventKind kind = EventKind::peer_join;
  PeerId peer = 0;
  std::uint32_t snapshot_index = 0;  // meaningful for snapshot events only
};

// Discrete-event core: virtual clock, (time, seq)-ordered queue, and the run
// RNG. Strictly single-threaded within a run.
class SimEngine {
 public:
  explicit SimEngine(std::uint64_t seed) : rng_(seed) {}

  SimTime now() const { return now_; }
  Rng& rng() { return rng_; }

  void set_handler(std::function<void(const Event&)> handler) {
    handler_ = std::move(handler);
  }

  // Returns the sequence number assigned to the event.
  std::uint64_t schedule(SimTime t, EventKind kind, PeerId peer = 0,
                         std::uint32_t snapshot_index = 0);

  // Processes every event with time <= t_end in (time, seq) order, then
  // advances the clock to t_end.
  void run_until(SimTime t_end);

  std::size_t pending_count() const { return queue_.size(); }
  std::uint64_t processed_count() const { return processed_; }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  SimTime now_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t processed_ = 0;
  Rng rng_;
  std::function<void(const Event&)> handler_;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
};

}  // namespace swarmsim
