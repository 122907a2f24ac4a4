#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "swarmsim/events.hpp"
#include "swarmsim/metrics.hpp"
#include "swarmsim/overlay.hpp"
#include "swarmsim/strategy.hpp"
#include "swarmsim/tracker.hpp"
#include "swarmsim/workload.hpp"

namespace swarmsim {

struct RunConfig {
  StrategyKind strategy = StrategyKind::tracker_default;
  int max_outgoing = 40;
  int max_peer_set = 80;
  int min_neighbors = 20;
  TrackerParams tracker;
  std::optional<double> preemption_cap;
  bool ungraceful_leaves = false;
  WorkloadConfig workload;
  std::vector<SimTime> snapshot_times = {SimTime::from_minutes(10)};
  SimTime horizon = SimTime::from_minutes(70);
  std::uint64_t seed = 1;
  bool record_event_log = false;
  bool record_audit = false;
};

struct SnapshotResult {
  OverlaySnapshot overlay;
  MetricsSnapshot metrics;
};

struct ProcessedEvent {
  SimTime time;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::peer_join;
  PeerId peer = 0;
};

// One simulation run: wires workload, tracker, overlay and strategy onto the
// event engine. Construct, run(), then read the snapshots.
class Simulation {
 public:
  explicit Simulation(RunConfig config);

  void run();

  const RunConfig& config() const { return config_; }
  const std::vector<SnapshotResult>& snapshots() const { return snapshots_; }
  const std::vector<ProcessedEvent>& event_log() const { return event_log_; }
  const Overlay& overlay() const { return overlay_; }
  const Tracker& tracker() const { return *tracker_; }
  const ConnectionPolicy& policy() const { return *policy_; }
  SimEngine& engine() { return engine_; }

  // Invoked after each processed event; used by instrumented runs.
  void set_event_observer(std::function<void(const Simulation&, const Event&)> fn) {
    observer_ = std::move(fn);
  }

 private:
  void dispatch(const Event& e);
  void capture_snapshot(std::uint32_t index);

  RunConfig config_;
  SimEngine engine_;
  Overlay overlay_;
  std::unique_ptr<Tracker> tracker_;
  std::unique_ptr<ConnectionPolicy> policy_;
  std::vector<PeerPlan> schedule_;
  std::vector<SnapshotResult> snapshots_;
  std::vector<ProcessedEvent> event_log_;
  std::function<void(const Simulation&, const Event&)> observer_;
  bool ran_ = false;
};

}  // namespace swarmsim
