#include "swarmsim/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_set>

namespace swarmsim {

namespace {

std::string peer_str(PeerId p) { return "peer " + std::to_string(p); }

}  // namespace

std::vector<std::string> check_overlay_invariants(const Overlay& overlay,
                                                  std::optional<double> preemption_cap) {
  std::vector<std::string> out;
  const auto handles = overlay.active_records();

  std::vector<int> initiated(overlay.peer_count(), 0);
  std::vector<int> touching(overlay.peer_count(), 0);
  std::vector<int> preempted_in(overlay.peer_count(), 0);
  std::unordered_set<std::uint64_t> seen_pairs;
  seen_pairs.reserve(handles.size() * 2);

  for (ConnectionHandle h : handles) {
    const ConnectionRecord& r = overlay.record(h);
    if (r.initiator == r.acceptor)
      out.push_back("self loop at " + peer_str(r.initiator));
    if (!overlay.alive(r.initiator) || !overlay.alive(r.acceptor))
      out.push_back("edge touches departed peer (" + std::to_string(r.initiator) +
                    ", " + std::to_string(r.acceptor) + ")");
    const PeerId lo = std::min(r.initiator, r.acceptor);
    const PeerId hi = std::max(r.initiator, r.acceptor);
    const std::uint64_t key = (static_cast<std::uint64_t>(lo) << 32) | hi;
    if (!seen_pairs.insert(key).second)
      out.push_back("parallel edge (" + std::to_string(lo) + ", " +
                    std::to_string(hi) + ")");
    ++initiated[r.initiator];
    ++touching[r.initiator];
    ++touching[r.acceptor];
    if (r.via_preemption) ++preempted_in[r.acceptor];

    const auto& ri = overlay.records_of(r.initiator);
    const auto& ra = overlay.records_of(r.acceptor);
    if (std::find(ri.begin(), ri.end(), h) == ri.end() ||
        std::find(ra.begin(), ra.end(), h) == ra.end())
      out.push_back("record missing from an endpoint peer set (" +
                    std::to_string(r.initiator) + ", " + std::to_string(r.acceptor) + ")");
  }

  std::int64_t outgoing_sum = 0;
  for (PeerId p = 0; p < overlay.peer_count(); ++p) {
    const bool alive = overlay.alive(p);
    const int ps = overlay.peer_set_size(p);
    const int og = overlay.outgoing_count(p);
    outgoing_sum += og;
    if (!alive && ps != 0)
      out.push_back(peer_str(p) + " departed but still holds connections");
    if (ps > overlay.max_peer_set(p))
      out.push_back(peer_str(p) + " exceeds max_peer_set");
    if (og > overlay.max_outgoing(p))
      out.push_back(peer_str(p) + " exceeds max_outgoing");
    if (og != initiated[p])
      out.push_back(peer_str(p) + " outgoing count disagrees with initiator flags");
    if (ps != touching[p])
      out.push_back(peer_str(p) + " peer set size disagrees with record list");
    if (overlay.preempted_in_count(p) != preempted_in[p])
      out.push_back(peer_str(p) + " preempted-in count disagrees with records");
    if (preemption_cap) {
      const int limit = static_cast<int>(
          std::ceil(*preemption_cap * overlay.max_peer_set(p) - 1e-9));
      if (overlay.preempted_in_count(p) > limit)
        out.push_back(peer_str(p) + " exceeds the preempted-in cap");
    }
  }
  if (outgoing_sum != static_cast<std::int64_t>(overlay.edge_count()))
    out.push_back("sum of outgoing counts does not equal the edge count");

  return out;
}

}  // namespace swarmsim
