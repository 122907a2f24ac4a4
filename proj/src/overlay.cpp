#include "swarmsim/overlay.hpp"

#include <algorithm>
#include <stdexcept>

namespace swarmsim {

const Overlay::Peer& Overlay::peer(PeerId p) const {
  if (p >= peers_.size()) throw std::logic_error("Overlay: unknown peer id");
  return peers_[p];
}

Overlay::Peer& Overlay::peer(PeerId p) {
  if (p >= peers_.size()) throw std::logic_error("Overlay: unknown peer id");
  return peers_[p];
}

void Overlay::set_bit(std::vector<std::uint64_t>& bits, PeerId id, bool value) {
  const std::size_t word = id / 64, off = id % 64;
  if (word >= bits.size()) bits.resize(word + 1, 0);
  if (value)
    bits[word] |= (std::uint64_t{1} << off);
  else
    bits[word] &= ~(std::uint64_t{1} << off);
}

bool Overlay::test_bit(const std::vector<std::uint64_t>& bits, PeerId id) {
  const std::size_t word = id / 64;
  return word < bits.size() && (bits[word] >> (id % 64)) & 1;
}

void Overlay::reserve_peers(std::size_t n) { peers_.reserve(n); }

PeerId Overlay::add_peer(SimTime now, int max_peer_set, int max_outgoing) {
  if (max_peer_set < 1) throw std::logic_error("Overlay::add_peer: max_peer_set < 1");
  if (max_outgoing < 1 || max_outgoing > max_peer_set)
    throw std::logic_error("Overlay::add_peer: max_outgoing out of [1, max_peer_set]");
  Peer p;
  p.alive = true;
  p.join_time = now;
  p.max_peer_set = max_peer_set;
  p.max_outgoing = max_outgoing;
  peers_.push_back(std::move(p));
  ++alive_count_;
  return static_cast<PeerId>(peers_.size() - 1);
}

bool Overlay::connected(PeerId a, PeerId b) const {
  return test_bit(peer(a).neighbor_bits, b);
}

ConnectionHandle Overlay::open_connection(PeerId initiator, PeerId acceptor,
                                          DiscoverySource source, SimTime now,
                                          bool via_preemption) {
  if (initiator == acceptor) throw std::logic_error("open_connection: self loop");
  Peer& pi = peer(initiator);
  Peer& pa = peer(acceptor);
  if (!pi.alive || !pa.alive) throw std::logic_error("open_connection: endpoint not alive");
  if (connected(initiator, acceptor))
    throw std::logic_error("open_connection: already connected");
  if (pi.outgoing >= pi.max_outgoing)
    throw std::logic_error("open_connection: initiator at outgoing cap");
  if (static_cast<int>(pi.records.size()) >= pi.max_peer_set)
    throw std::logic_error("open_connection: initiator peer set full");
  if (static_cast<int>(pa.records.size()) >= pa.max_peer_set)
    throw std::logic_error("open_connection: acceptor peer set full");

  ConnectionHandle h;
  if (!free_slots_.empty()) {
    h = free_slots_.back();
    free_slots_.pop_back();
    records_[h] = ConnectionRecord{initiator, acceptor, source, now, via_preemption};
    record_active_[h] = true;
  } else {
    h = static_cast<ConnectionHandle>(records_.size());
    records_.push_back(ConnectionRecord{initiator, acceptor, source, now, via_preemption});
    record_active_.push_back(true);
  }
  pi.records.push_back(h);
  pa.records.push_back(h);
  set_bit(pi.neighbor_bits, acceptor, true);
  set_bit(pa.neighbor_bits, initiator, true);
  ++pi.outgoing;
  if (via_preemption) ++pa.preempted_in;
  ++active_edges_;
  return h;
}

const ConnectionRecord& Overlay::record(ConnectionHandle h) const {
  if (h >= records_.size() || !record_active_[h])
    throw std::logic_error("Overlay::record: unknown connection");
  return records_[h];
}

void Overlay::detach_record(Peer& p, ConnectionHandle h, PeerId other) {
  auto it = std::find(p.records.begin(), p.records.end(), h);
  if (it == p.records.end())
    throw std::logic_error("Overlay: record missing from endpoint peer set");
  *it = p.records.back();
  p.records.pop_back();
  set_bit(p.neighbor_bits, other, false);
}

ClosedConnection Overlay::close_connection(ConnectionHandle h) {
  if (h >= records_.size() || !record_active_[h])
    throw std::logic_error("close_connection: unknown connection");
  const ConnectionRecord rec = records_[h];
  Peer& pi = peer(rec.initiator);
  Peer& pa = peer(rec.acceptor);
  detach_record(pi, h, rec.acceptor);
  detach_record(pa, h, rec.initiator);
  --pi.outgoing;
  if (rec.via_preemption) --pa.preempted_in;
  record_active_[h] = false;
  free_slots_.push_back(h);
  --active_edges_;
  ++total_closes_;
  if (removing_) ++closes_from_removal_;
  return ClosedConnection{rec.initiator, rec.acceptor, rec.via_preemption};
}

std::vector<PeerId> Overlay::remove_peer(PeerId p) {
  Peer& me = peer(p);
  if (!me.alive) throw std::logic_error("remove_peer: peer not alive");
  me.alive = false;
  --alive_count_;
  std::vector<PeerId> neighbors;
  neighbors.reserve(me.records.size());
  removing_ = true;
  while (!me.records.empty()) {
    const ConnectionHandle h = me.records.front();
    const ConnectionRecord& rec = records_[h];
    neighbors.push_back(rec.initiator == p ? rec.acceptor : rec.initiator);
    close_connection(h);
  }
  removing_ = false;
  return neighbors;
}

void Overlay::learn_address(PeerId owner, PeerId addr, DiscoverySource source) {
  if (owner == addr) throw std::logic_error("learn_address: own address");
  auto& known = peer(owner).known;
  auto [it, inserted] = known.emplace(addr, source);
  // First source sticks, except tracker upgrades a weaker credential.
  if (!inserted && source == DiscoverySource::tracker)
    it->second = DiscoverySource::tracker;
}

void Overlay::forget_address(PeerId owner, PeerId addr) {
  peer(owner).known.erase(addr);
}

std::optional<DiscoverySource> Overlay::address_source(PeerId owner, PeerId addr) const {
  const auto& known = peer(owner).known;
  auto it = known.find(addr);
  if (it == known.end()) return std::nullopt;
  return it->second;
}

const std::map<PeerId, DiscoverySource>& Overlay::known_addresses(PeerId owner) const {
  return peer(owner).known;
}

std::vector<ConnectionHandle> Overlay::active_records() const {
  std::vector<ConnectionHandle> out;
  out.reserve(active_edges_);
  for (ConnectionHandle h = 0; h < records_.size(); ++h)
    if (record_active_[h]) out.push_back(h);
  return out;
}

std::vector<std::pair<PeerId, PeerId>> Overlay::snapshot_edges() const {
  std::vector<std::pair<PeerId, PeerId>> edges;
  edges.reserve(active_edges_);
  for (ConnectionHandle h = 0; h < records_.size(); ++h) {
    if (!record_active_[h]) continue;
    const ConnectionRecord& r = records_[h];
    edges.emplace_back(std::min(r.initiator, r.acceptor),
                       std::max(r.initiator, r.acceptor));
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::vector<PeerId> Overlay::alive_ids() const {
  std::vector<PeerId> out;
  out.reserve(alive_count_);
  for (PeerId p = 0; p < peers_.size(); ++p)
    if (peers_[p].alive) out.push_back(p);
  return out;
}

}  // namespace swarmsim
