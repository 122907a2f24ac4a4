#include "swarmsim/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace swarmsim {

namespace {

// Compact adjacency lists with alive peers renumbered 0..n-1.
struct AdjacencyView {
  std::vector<std::vector<std::int32_t>> adj;

  explicit AdjacencyView(const OverlaySnapshot& s) {
    const std::size_t n = s.alive_peers.size();
    adj.resize(n);
    PeerId max_id = 0;
    for (PeerId p : s.alive_peers) max_id = std::max(max_id, p);
    std::vector<std::int32_t> index(max_id + 1, -1);
    for (std::size_t i = 0; i < n; ++i) index[s.alive_peers[i]] = static_cast<std::int32_t>(i);
    for (const auto& [a, b] : s.edges) {
      if (a > max_id || b > max_id || index[a] < 0 || index[b] < 0)
        throw std::logic_error("metrics: edge references a peer outside the snapshot");
      adj[index[a]].push_back(index[b]);
      adj[index[b]].push_back(index[a]);
    }
  }

  std::size_t size() const { return adj.size(); }
};

// BFS from `source`; fills dist (-1 = unreached) and returns (reached count,
// max finite distance).
std::pair<std::size_t, int> bfs(const std::vector<std::vector<std::int32_t>>& adj,
                                std::int32_t source, std::vector<std::int32_t>& dist,
                                std::vector<std::int32_t>& frontier) {
  std::fill(dist.begin(), dist.end(), -1);
  frontier.clear();
  frontier.push_back(source);
  dist[source] = 0;
  std::size_t head = 0;
  int max_dist = 0;
  while (head < frontier.size()) {
    const std::int32_t u = frontier[head++];
    const std::int32_t du = dist[u];
    for (std::int32_t v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = du + 1;
        max_dist = std::max(max_dist, du + 1);
        frontier.push_back(v);
      }
    }
  }
  return {frontier.size(), max_dist};
}

}  // namespace

double bottleneck_index(const OverlaySnapshot& s) {
  const double denom =
      static_cast<double>(s.first_group_size) * static_cast<double>(s.max_peer_set);
  if (denom <= 0.0) return 0.0;
  const PeerId boundary = static_cast<PeerId>(s.first_group_size);
  std::int64_t cross = 0;
  for (const auto& [i, j] : s.edges)
    if ((i < boundary) != (j < boundary)) ++cross;
  return static_cast<double>(cross) / denom;
}

double average_peer_set_size(const OverlaySnapshot& s) {
  if (s.alive_peers.empty()) return 0.0;
  return 2.0 * static_cast<double>(s.edges.size()) /
         static_cast<double>(s.alive_peers.size());
}

bool is_connected(const OverlaySnapshot& s) {
  const std::size_t n = s.alive_peers.size();
  if (n <= 1) return true;
  AdjacencyView view(s);
  std::vector<std::int32_t> dist(n), frontier;
  frontier.reserve(n);
  return bfs(view.adj, 0, dist, frontier).first == n;
}

int diameter(const OverlaySnapshot& s) {
  const std::size_t n = s.alive_peers.size();
  if (n <= 1) return 0;
  AdjacencyView view(s);
  std::vector<std::int32_t> dist(n), frontier;
  frontier.reserve(n);
  int max_ecc = 0;
  for (std::size_t src = 0; src < n; ++src) {
    const auto [reached, ecc] = bfs(view.adj, static_cast<std::int32_t>(src), dist, frontier);
    if (reached < n) return 0;  // partitioned: reported as 0
    max_ecc = std::max(max_ecc, ecc);
  }
  return max_ecc;
}

std::vector<std::pair<PeerId, PeerId>> connectivity_matrix(const OverlaySnapshot& s) {
  std::vector<std::pair<PeerId, PeerId>> out;
  out.reserve(s.edges.size());
  for (const auto& [a, b] : s.edges)
    out.emplace_back(std::min(a, b), std::max(a, b));
  std::sort(out.begin(), out.end());
  return out;
}

int oracle_diameter(const OverlaySnapshot& s) {
  const std::size_t n = s.alive_peers.size();
  if (n > 200)
    throw std::logic_error("oracle_diameter: snapshot too large for the oracle");
  if (n <= 1) return 0;
  constexpr std::int32_t kInf = std::numeric_limits<std::int32_t>::max() / 4;
  std::vector<std::vector<std::int32_t>> d(n, std::vector<std::int32_t>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  std::vector<std::int32_t> index;
  {
    PeerId max_id = 0;
    for (PeerId p : s.alive_peers) max_id = std::max(max_id, p);
    index.assign(max_id + 1, -1);
    for (std::size_t i = 0; i < n; ++i) index[s.alive_peers[i]] = static_cast<std::int32_t>(i);
  }
  for (const auto& [a, b] : s.edges) {
    const auto ia = index[a], ib = index[b];
    d[ia][ib] = 1;
    d[ib][ia] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i][k] == kInf) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    }
  int max_dist = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i][j] == kInf) return 0;  // same partitioned-overlay convention
      max_dist = std::max(max_dist, static_cast<int>(d[i][j]));
    }
  return max_dist;
}

MetricsSnapshot compute_metrics(const OverlaySnapshot& s) {
  MetricsSnapshot m;
  m.taken_at = s.taken_at;
  m.n_alive = s.alive_peers.size();
  m.n_edges = s.edges.size();
  m.bottleneck_index = bottleneck_index(s);
  m.avg_peer_set = average_peer_set_size(s);
  m.diameter = diameter(s);
  m.connected = is_connected(s);
  return m;
}

}  // namespace swarmsim
