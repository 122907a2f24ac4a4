#include "swarmsim/tracker.hpp"

#include <algorithm>
#include <stdexcept>

namespace swarmsim {

std::vector<PeerId> Tracker::random_subset_excluding(PeerId exclude) {
  std::vector<PeerId> pool;
  pool.reserve(members_.size());
  for (PeerId m : members_)
    if (m != exclude) pool.push_back(m);
  const std::size_t k =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(params_.response_size, 0)),
                            pool.size());
  // Partial Fisher-Yates: the first k slots end up a uniform sample without
  // replacement.
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng_.next_below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

void Tracker::erase_member(PeerId p) {
  auto it = pos_.find(p);
  if (it == pos_.end()) return;
  const std::size_t i = it->second;
  const PeerId moved = members_.back();
  members_[i] = moved;
  members_.pop_back();
  pos_[moved] = i;
  pos_.erase(p);
  last_heartbeat_.erase(p);
  last_request_.erase(p);
}

void Tracker::expire_stale(SimTime now) {
  std::vector<PeerId> stale;
  for (PeerId m : members_) {
    const SimTime hb = last_heartbeat_.at(m);
    if (now.ms() - hb.ms() > params_.expiry_timeout.ms()) stale.push_back(m);
  }
  for (PeerId p : stale) erase_member(p);
}

std::vector<PeerId> Tracker::announce_join(PeerId p, SimTime now) {
  expire_stale(now);
  if (is_member(p)) throw std::logic_error("Tracker::announce_join: already registered");
  std::vector<PeerId> response = random_subset_excluding(p);
  pos_[p] = members_.size();
  members_.push_back(p);
  last_heartbeat_[p] = now;
  return response;
}

std::optional<std::vector<PeerId>> Tracker::announce_more(PeerId p, SimTime now) {
  expire_stale(now);
  if (!is_member(p)) throw std::logic_error("Tracker::announce_more: unknown peer");
  auto it = last_request_.find(p);
  if (it != last_request_.end() &&
      now.ms() - it->second.ms() < params_.min_request_interval.ms())
    return std::nullopt;
  last_request_[p] = now;
  return random_subset_excluding(p);
}

void Tracker::heartbeat(PeerId p, SimTime now) {
  if (!is_member(p)) return;
  last_heartbeat_[p] = now;
}

void Tracker::announce_leave(PeerId p, SimTime) { erase_member(p); }

std::optional<SimTime> Tracker::last_heartbeat(PeerId p) const {
  auto it = last_heartbeat_.find(p);
  if (it == last_heartbeat_.end()) return std::nullopt;
  return it->second;
}

SimTime Tracker::next_allowed_request(PeerId p, SimTime now) const {
  auto it = last_request_.find(p);
  if (it == last_request_.end()) return now;
  return std::max(now, it->second + params_.min_request_interval);
}

}  // namespace swarmsim
