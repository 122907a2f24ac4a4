#include "swarmsim/workload.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swarmsim {

int arrivals_for_slot(const WorkloadConfig& cfg, int slot) {
  if (slot < 1) throw std::logic_error("arrivals_for_slot: slots start at 1");
  if (slot > cfg.active_slots) return 0;
  const double x = cfg.amplitude * std::exp(-cfg.decay * (slot - 1));
  // The epsilon keeps exact integers (slot 1: amplitude * e^0) from being
  // pushed up by floating-point noise.
  return static_cast<int>(std::ceil(x - 1e-9));
}

std::vector<SimTime> sample_arrival_times(const WorkloadConfig& cfg, int slot,
                                          int count, Rng& rng) {
  if (slot < 1) throw std::logic_error("sample_arrival_times: slots start at 1");
  if (count < 0) throw std::logic_error("sample_arrival_times: negative count");
  const std::int64_t lo = cfg.slot_length.ms() * (slot - 1);
  const std::int64_t hi = cfg.slot_length.ms() * slot;  // exclusive
  std::vector<std::int64_t> ms(count);
  for (auto& t : ms) t = rng.next_int_inclusive(lo, hi - 1);
  std::sort(ms.begin(), ms.end());
  std::vector<SimTime> out;
  out.reserve(ms.size());
  for (auto t : ms) out.push_back(SimTime::from_ms(t));
  return out;
}

SimTime sample_lifetime(const WorkloadConfig& cfg, Rng& rng) {
  if (cfg.lifetime_min > cfg.lifetime_max)
    throw std::logic_error("sample_lifetime: lifetime_min > lifetime_max");
  return SimTime::from_ms(
      rng.next_int_inclusive(cfg.lifetime_min.ms(), cfg.lifetime_max.ms()));
}

std::vector<PeerPlan> build_schedule(const WorkloadConfig& cfg, Rng& rng) {
  std::vector<PeerPlan> plans;
  PeerPlan seed;
  seed.join_index = 0;
  seed.join_time = SimTime::from_ms(0);
  if (!cfg.seed_peer_immortal)
    seed.leave_time = seed.join_time + sample_lifetime(cfg, rng);
  plans.push_back(seed);

  PeerId next_index = 1;
  for (int slot = 1; slot <= cfg.active_slots; ++slot) {
    const int count = arrivals_for_slot(cfg, slot);
    const auto times = sample_arrival_times(cfg, slot, count, rng);
    for (SimTime t : times) {
      PeerPlan p;
      p.join_index = next_index++;
      p.join_time = t;
      p.leave_time = t + sample_lifetime(cfg, rng);
      plans.push_back(p);
    }
  }
  return plans;
}

}  // namespace swarmsim
