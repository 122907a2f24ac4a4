#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "swarmsim/time.hpp"
#include "swarmsim/types.hpp"

namespace swarmsim {

// Immutable view of the overlay at one instant. Edges are (i, j) join-index
// pairs with i < j, sorted; they reference alive peers only.
struct OverlaySnapshot {
  SimTime taken_at;
  std::vector<PeerId> alive_peers;  // ascending join order
  std::vector<std::pair<PeerId, PeerId>> edges;
  int max_peer_set = 80;
  int first_group_size = 80;
};

struct MetricsSnapshot {
  SimTime taken_at;
  std::size_t n_alive = 0;
  std::size_t n_edges = 0;
  double bottleneck_index = 0.0;
  double avg_peer_set = 0.0;
  int diameter = 0;  // 0 encodes "partitioned" (and the trivial n <= 1 case)
  bool connected = false;
};

// Cross-edges between the first first_group_size joiners and everyone else,
// over first_group_size * max_peer_set (6400 at the defaults). Group
// membership is by join index, departed or not.
double bottleneck_index(const OverlaySnapshot& s);

// 2|E| / |V|; 0 for an empty snapshot.
double average_peer_set_size(const OverlaySnapshot& s);

// Maximum shortest-path hop count when the alive graph is connected;
// 0 when it is partitioned or has fewer than two peers.
int diameter(const OverlaySnapshot& s);

// True when every alive peer is reachable from every other (vacuously true
// for n <= 1).
bool is_connected(const OverlaySnapshot& s);

// Edge set in join-index coordinates, (i, j) with i < j, sorted; one entry
// per neighbor pair, symmetric closure implied.
std::vector<std::pair<PeerId, PeerId>> connectivity_matrix(const OverlaySnapshot& s);

// Independent all-pairs check (Floyd-Warshall) for testing diameter().
// Guarded to small snapshots; throws above 200 alive peers.
int oracle_diameter(const OverlaySnapshot& s);

MetricsSnapshot compute_metrics(const OverlaySnapshot& s);

}  // namespace swarmsim
