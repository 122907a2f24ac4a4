#pragma once

#include <optional>
#include <vector>

#include "swarmsim/rng.hpp"
#include "swarmsim/time.hpp"
#include "swarmsim/types.hpp"

namespace swarmsim {

// Flash-crowd arrival model: exponentially decaying per-slot arrival counts
// and uniform lifetimes.
struct WorkloadConfig {
  SimTime slot_length = SimTime::from_minutes(10);
  int amplitude = 1000;
  double decay = 0.7;
  int active_slots = 4;
  SimTime lifetime_min = SimTime::from_minutes(10);
  SimTime lifetime_max = SimTime::from_minutes(20);
  bool seed_peer_immortal = true;
};

// Number of arrivals in 1-based slot i: amplitude * e^(-decay*(i-1)) for
// i <= active_slots, else 0. Ceiling, not nearest: slot 4 of the default
// profile is 122.456 and the advertised totals put 123 peers there.
int arrivals_for_slot(const WorkloadConfig& cfg, int slot);

// `count` i.i.d. uniform instants within the slot's half-open interval,
// sorted ascending.
std::vector<SimTime> sample_arrival_times(const WorkloadConfig& cfg, int slot,
                                          int count, Rng& rng);

// Uniform in [lifetime_min, lifetime_max], both ends included.
SimTime sample_lifetime(const WorkloadConfig& cfg, Rng& rng);

struct PeerPlan {
  PeerId join_index = 0;
  SimTime join_time;
  std::optional<SimTime> leave_time;  // unset for the immortal seed
};

// Full run schedule: the initial seed at t=0 plus every slot's arrivals with
// their departure times. Pure function of (config, rng state).
std::vector<PeerPlan> build_schedule(const WorkloadConfig& cfg, Rng& rng);

}  // namespace swarmsim
