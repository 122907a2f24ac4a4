#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "swarmsim/time.hpp"
#include "swarmsim/types.hpp"

namespace swarmsim {

// How a peer learned another peer's address. Tracker-discovered addresses
// carry the credential the preemption strategy honors.
enum class DiscoverySource : std::uint8_t { tracker, other };

using ConnectionHandle = std::uint32_t;

struct ConnectionRecord {
  PeerId initiator = 0;  // opened the connection; counts toward its outgoing cap
  PeerId acceptor = 0;
  DiscoverySource source = DiscoverySource::tracker;  // how initiator learned acceptor
  SimTime opened_at;
  bool via_preemption = false;  // acceptor admitted it by dropping another connection
};

struct ClosedConnection {
  PeerId initiator = 0;
  PeerId acceptor = 0;
  bool via_preemption = false;
};

// The overlay graph: peers, undirected connections flagged with an initiator,
// per-peer connection limits, and each peer's known-address pool. Pure
// bookkeeping; admission policy lives in ConnectionPolicy.
class Overlay {
 public:
  // Peers get dense ids in call order (0 = first peer).
  PeerId add_peer(SimTime now, int max_peer_set, int max_outgoing);
  void reserve_peers(std::size_t n);

  std::size_t peer_count() const { return peers_.size(); }
  std::size_t alive_count() const { return alive_count_; }
  bool alive(PeerId p) const { return peer(p).alive; }

  int peer_set_size(PeerId p) const { return static_cast<int>(peer(p).records.size()); }
  int outgoing_count(PeerId p) const { return peer(p).outgoing; }
  int preempted_in_count(PeerId p) const { return peer(p).preempted_in; }
  int max_peer_set(PeerId p) const { return peer(p).max_peer_set; }
  int max_outgoing(PeerId p) const { return peer(p).max_outgoing; }
  SimTime join_time(PeerId p) const { return peer(p).join_time; }

  bool connected(PeerId a, PeerId b) const;

  // Requires: both alive, not already connected, initiator below its outgoing
  // cap, both below their peer-set caps. Violations are logic errors; the
  // policy layer validates before calling.
  ConnectionHandle open_connection(PeerId initiator, PeerId acceptor,
                                   DiscoverySource source, SimTime now,
                                   bool via_preemption = false);

  const ConnectionRecord& record(ConnectionHandle h) const;

  // Removes the record from both peer sets and returns its endpoints so the
  // caller can fire drop notifications.
  ClosedConnection close_connection(ConnectionHandle h);

  // Closes all of the peer's connections, marks it departed, and returns the
  // former neighbors.
  std::vector<PeerId> remove_peer(PeerId p);

  // Address book.
  void learn_address(PeerId owner, PeerId addr, DiscoverySource source);
  void forget_address(PeerId owner, PeerId addr);
  std::optional<DiscoverySource> address_source(PeerId owner, PeerId addr) const;
  const std::map<PeerId, DiscoverySource>& known_addresses(PeerId owner) const;

  const std::vector<ConnectionHandle>& records_of(PeerId p) const { return peer(p).records; }
  std::vector<ConnectionHandle> active_records() const;
  std::size_t edge_count() const { return active_edges_; }

  // Undirected edge list in join-index coordinates: (i, j) with i < j, sorted
  // lexicographically. Departed peers hold no connections, so every edge
  // references alive peers.
  std::vector<std::pair<PeerId, PeerId>> snapshot_edges() const;

  std::vector<PeerId> alive_ids() const;

  // Close accounting, used to verify that a strategy never tears down
  // connections on its own.
  std::uint64_t total_closes() const { return total_closes_; }
  std::uint64_t closes_from_removal() const { return closes_from_removal_; }

 private:
  struct Peer {
    bool alive = false;
    SimTime join_time;
    int max_peer_set = 0;
    int max_outgoing = 0;
    int outgoing = 0;
    int preempted_in = 0;
    std::vector<ConnectionHandle> records;
    std::vector<std::uint64_t> neighbor_bits;
    std::map<PeerId, DiscoverySource> known;  // ordered: deterministic iteration
  };

  const Peer& peer(PeerId p) const;
  Peer& peer(PeerId p);
  static void set_bit(std::vector<std::uint64_t>& bits, PeerId id, bool value);
  static bool test_bit(const std::vector<std::uint64_t>& bits, PeerId id);
  void detach_record(Peer& p, ConnectionHandle h, PeerId other);

  std::vector<Peer> peers_;
  std::vector<ConnectionRecord> records_;
  std::vector<bool> record_active_;
  std::vector<ConnectionHandle> free_slots_;
  std::size_t alive_count_ = 0;
  std::size_t active_edges_ = 0;
  std::uint64_t total_closes_ = 0;
  std::uint64_t closes_from_removal_ = 0;
  bool removing_ = false;
};

}  // namespace swarmsim
