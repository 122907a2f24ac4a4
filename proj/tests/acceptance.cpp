// Acceptance suite: runs the full default experiment and checks every
// release criterion, printing one pass/fail line per criterion. Exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "swarmsim/harness.hpp"
#include "swarmsim/invariants.hpp"
#include "swarmsim/metrics.hpp"
#include "swarmsim/rng.hpp"
#include "swarmsim/simulation.hpp"
#include "swarmsim/workload.hpp"

using namespace swarmsim;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kBaseSeed = 20090801;
const char* kOutRoot = "acceptance_out";

struct CellStats {
  double bi_mean = 0, avg_mean = 0, diam_mean = 0;
  int runs = 0;
  int disconnected_runs = 0;
  bool all_connected() const { return disconnected_runs == 0; }
};

using CellKey = std::pair<StrategyKind, int>;

std::map<CellKey, CellStats> cell_stats(const std::vector<RunRow>& rows) {
  std::map<CellKey, CellStats> out;
  for (const RunRow& r : rows) {
    CellStats& c = out[{r.strategy, r.omax}];
    c.bi_mean += r.metrics.bottleneck_index;
    c.avg_mean += r.metrics.avg_peer_set;
    c.diam_mean += r.metrics.diameter;
    c.runs += 1;
    if (!r.metrics.connected) c.disconnected_runs += 1;
  }
  for (auto& [key, c] : out) {
    c.bi_mean /= c.runs;
    c.avg_mean /= c.runs;
    c.diam_mean /= c.runs;
  }
  return out;
}

bool within_one_percent(double a, double b) {
  return std::fabs(a - b) <= 0.01 * std::max(std::fabs(a), std::fabs(b));
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

struct Reporter {
  int failures = 0;
  void report(int id, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d %-28s %s\n", pass ? "PASS" : "FAIL", id, name,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
};

// ---- criterion 1: workload exactness ------------------------------------

bool check_workload(std::string& detail) {
  const WorkloadConfig cfg;
  const int want[] = {1000, 497, 247, 123, 0};
  for (int slot = 1; slot <= 5; ++slot)
    if (arrivals_for_slot(cfg, slot) != want[slot - 1]) {
      detail = "slot " + std::to_string(slot) + " arrivals " +
               std::to_string(arrivals_for_slot(cfg, slot));
      return false;
    }
  for (std::uint64_t seed : {1ull, 7ull, 20090801ull}) {
    Rng rng(seed);
    const auto plans = build_schedule(cfg, rng);
    if (plans.size() != 1868) {
      detail = "schedule size " + std::to_string(plans.size());
      return false;
    }
    for (std::size_t i = 1; i < plans.size(); ++i) {
      const SimTime life = *plans[i].leave_time - plans[i].join_time;
      if (life < cfg.lifetime_min || life > cfg.lifetime_max) {
        detail = "lifetime out of [10, 20] minutes";
        return false;
      }
    }
  }
  detail = "slots 1000/497/247/123/0, 1867 non-seed peers, lifetimes in [10,20]";
  return true;
}

// ---- criteria 2-6: sweep-level statistics --------------------------------

bool check_partition(const std::map<CellKey, CellStats>& cells, std::string& detail) {
  const auto it = cells.find({StrategyKind::tracker_default, 80});
  if (it == cells.end()) {
    detail = "missing tracker omax=80 cell";
    return false;
  }
  const CellStats& c = it->second;
  const bool pass =
      c.bi_mean < 0.01 && c.diam_mean == 0.0 && c.disconnected_runs >= 8;
  detail = "tracker omax=80: mean BI " + fmt(c.bi_mean) + ", mean diameter " +
           fmt(c.diam_mean) + ", disconnected in " +
           std::to_string(c.disconnected_runs) + "/" + std::to_string(c.runs) +
           " runs";
  return pass;
}

bool check_bi_unimodal(const std::map<CellKey, CellStats>& cells,
                       std::string& detail) {
  auto bi = [&](int omax) {
    return cells.at({StrategyKind::tracker_default, omax}).bi_mean;
  };
  const bool pass = bi(20) > bi(5) && bi(20) > bi(40) && bi(40) > bi(60) &&
                    bi(60) > bi(80);
  detail = "tracker BI means: 5->" + fmt(bi(5)) + " 20->" + fmt(bi(20)) + " 40->" +
           fmt(bi(40)) + " 60->" + fmt(bi(60)) + " 80->" + fmt(bi(80));
  return pass;
}

bool check_peer_set_saturation(const std::map<CellKey, CellStats>& cells,
                               const ExperimentConfig& cfg, std::string& detail) {
  const double at80 = cells.at({StrategyKind::tracker_default, 80}).avg_mean;
  const double at30 = cells.at({StrategyKind::tracker_default, 30}).avg_mean;
  bool max_at_80 = true;
  for (int omax : cfg.omax_values)
    if (cells.at({StrategyKind::tracker_default, omax}).avg_mean > at80)
      max_at_80 = false;
  const bool pass = max_at_80 && at30 >= 0.9 * at80;
  detail = "tracker avg peer set: omax=30 -> " + fmt(at30) + ", omax=80 -> " +
           fmt(at80) + (max_at_80 ? " (max at 80)" : " (max not at 80)");
  return pass;
}

bool check_preemption_dominance(const std::map<CellKey, CellStats>& cells,
                                const ExperimentConfig& cfg, std::string& detail) {
  int bi_ties = 0, avg_ties = 0, diam_ties = 0;
  std::string failure;
  for (int omax : cfg.omax_values) {
    const CellStats& trk = cells.at({StrategyKind::tracker_default, omax});
    const CellStats& pre = cells.at({StrategyKind::preemption, omax});
    if (pre.bi_mean < trk.bi_mean) {
      if (within_one_percent(pre.bi_mean, trk.bi_mean))
        ++bi_ties;
      else
        failure += " BI@" + std::to_string(omax);
    }
    if (pre.avg_mean < trk.avg_mean) {
      if (within_one_percent(pre.avg_mean, trk.avg_mean))
        ++avg_ties;
      else
        failure += " avg@" + std::to_string(omax);
    }
    // Diameter: smaller is better; a partitioned tracker overlay loses to any
    // connected preemption overlay.
    if (!pre.all_connected()) {
      failure += " preempt-disconnected@" + std::to_string(omax);
    } else if (trk.all_connected() && pre.diam_mean > trk.diam_mean) {
      if (within_one_percent(pre.diam_mean, trk.diam_mean))
        ++diam_ties;
      else
        failure += " diam@" + std::to_string(omax);
    }
  }
  const bool pass = failure.empty() && bi_ties <= 2 && avg_ties <= 2 && diam_ties <= 2;
  detail = "ties within 1%: BI " + std::to_string(bi_ties) + ", avg " +
           std::to_string(avg_ties) + ", diameter " + std::to_string(diam_ties);
  if (!failure.empty()) detail += "; violations:" + failure;
  return pass;
}

bool check_preemption_optimum(const std::map<CellKey, CellStats>& cells,
                              const ExperimentConfig& cfg, std::string& detail) {
  const CellStats& at80 = cells.at({StrategyKind::preemption, 80});
  bool pass = true;
  for (int omax : cfg.omax_values) {
    const CellStats& c = cells.at({StrategyKind::preemption, omax});
    if (c.bi_mean > at80.bi_mean) pass = false;
    if (c.avg_mean > at80.avg_mean) pass = false;
    const double c_diam = c.all_connected() ? c.diam_mean
                                            : std::numeric_limits<double>::infinity();
    const double best_diam = at80.all_connected()
                                 ? at80.diam_mean
                                 : std::numeric_limits<double>::infinity();
    if (c_diam < best_diam) pass = false;
  }
  detail = "preemption omax=80: BI " + fmt(at80.bi_mean) + ", avg " +
           fmt(at80.avg_mean) + ", diameter " + fmt(at80.diam_mean);
  return pass;
}

// ---- criterion 7: no clustering under preemption -------------------------

bool check_no_clustering(const ExperimentConfig& cfg, std::string& detail) {
  int runs_with_cross = 0;
  for (int run = 0; run < cfg.runs; ++run) {
    const fs::path file =
        fs::path(cfg.output_dir) /
        edge_file_name(StrategyKind::preemption, 80, run, SimTime::from_minutes(10));
    std::ifstream in(file);
    if (!in) {
      detail = "missing edge file " + file.string();
      return false;
    }
    long cross = 0;
    PeerId i, j;
    while (in >> i >> j)
      if ((i < 80) != (j < 80)) ++cross;
    if (cross > 0) ++runs_with_cross;
  }
  detail = "boundary-crossing edges present in " + std::to_string(runs_with_cross) +
           "/" + std::to_string(cfg.runs) + " runs";
  return runs_with_cross == cfg.runs;
}

// ---- criterion 8: metric oracles -----------------------------------------

OverlaySnapshot random_snapshot(PeerId n, double p, Rng& rng, int max_ps,
                                int first_group) {
  OverlaySnapshot s;
  s.taken_at = SimTime::from_ms(0);
  s.max_peer_set = max_ps;
  s.first_group_size = first_group;
  for (PeerId i = 0; i < n; ++i) s.alive_peers.push_back(i);
  for (PeerId i = 0; i < n; ++i)
    for (PeerId j = i + 1; j < n; ++j)
      if (rng.next_unit() < p) s.edges.emplace_back(i, j);
  return s;
}

bool check_oracles(std::string& detail) {
  Rng rng(kBaseSeed);
  int diameter_checked = 0;
  for (double p : {0.05, 0.2, 0.8}) {
    for (int trial = 0; trial < 100; ++trial) {
      const PeerId n = static_cast<PeerId>(2 + rng.next_below(99));
      const auto s = random_snapshot(n, p, rng, 80, 80);
      if (diameter(s) != oracle_diameter(s)) {
        detail = "diameter mismatch on n=" + std::to_string(n) +
                 " p=" + std::to_string(p);
        return false;
      }
      ++diameter_checked;
    }
  }
  int bi_checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const PeerId n = static_cast<PeerId>(2 + rng.next_below(150));
    const int group = 1 + static_cast<int>(rng.next_below(80));
    const auto s = random_snapshot(n, 0.1, rng, 80, group);
    // Naive double loop over (group, rest) pairs, probing adjacency.
    std::set<std::pair<PeerId, PeerId>> adj;
    for (auto [a, b] : s.edges) {
      adj.emplace(a, b);
      adj.emplace(b, a);
    }
    long hits = 0;
    for (PeerId i : s.alive_peers) {
      if (i >= static_cast<PeerId>(group)) continue;
      for (PeerId j : s.alive_peers)
        if (j >= static_cast<PeerId>(group) && adj.count({i, j})) ++hits;
    }
    const double naive = static_cast<double>(hits) /
                         (static_cast<double>(group) * s.max_peer_set);
    if (std::fabs(naive - bottleneck_index(s)) > 1e-12) {
      detail = "bottleneck index mismatch on n=" + std::to_string(n);
      return false;
    }
    ++bi_checked;
  }
  detail = std::to_string(diameter_checked) + " diameter graphs and " +
           std::to_string(bi_checked) + " bottleneck snapshots match exactly";
  return true;
}

// ---- criterion 9: instrumented invariants ---------------------------------

bool check_invariants(std::string& detail) {
  std::uint64_t events_total = 0;
  for (StrategyKind strategy :
       {StrategyKind::tracker_default, StrategyKind::preemption}) {
    for (int omax : {20, 80}) {
      RunConfig cfg;
      cfg.strategy = strategy;
      cfg.max_outgoing = omax;
      cfg.seed = derive_seed(kBaseSeed, strategy, omax, 0) ^ 0xabcdef;
      cfg.record_audit = true;
      Simulation sim(cfg);
      std::string first_violation;
      std::uint64_t events = 0;
      sim.set_event_observer([&](const Simulation& s, const Event&) {
        ++events;
        const auto v =
            check_overlay_invariants(s.overlay(), s.config().preemption_cap);
        if (!v.empty() && first_violation.empty()) first_violation = v.front();
      });
      sim.run();
      events_total += events;
      if (!first_violation.empty()) {
        detail = std::string(strategy_name(strategy)) + " omax=" +
                 std::to_string(omax) + ": " + first_violation;
        return false;
      }
      for (const auto& entry : sim.policy().preemption_audit()) {
        if (entry.source != DiscoverySource::tracker) {
          detail = "preemption admitted a non-tracker credential";
          return false;
        }
        if (entry.target_peer_set_after != sim.overlay().max_peer_set(entry.target)) {
          detail = "preemption left a target below its cap";
          return false;
        }
      }
      if (strategy == StrategyKind::tracker_default &&
          sim.policy().preemption_count() != 0) {
        detail = "tracker strategy preempted";
        return false;
      }
    }
  }
  detail = "0 violations across " + std::to_string(events_total) +
           " instrumented events (2 strategies x omax {20, 80})";
  return true;
}

// ---- criterion 10: determinism & runtime ----------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main() {
  Reporter reporter;

  ExperimentConfig sweep_cfg;
  sweep_cfg.base_seed = kBaseSeed;
  sweep_cfg.jobs = 0;  // one worker per hardware thread
  sweep_cfg.output_dir = std::string(kOutRoot) + "/sweep_a";
  fs::remove_all(kOutRoot);

  std::printf("running full sweep (%zu strategies x %zu omax values x %d runs)...\n",
              sweep_cfg.strategies.size(), sweep_cfg.omax_values.size(),
              sweep_cfg.runs);
  const auto t0 = std::chrono::steady_clock::now();
  const SweepResult sweep_a = sweep(sweep_cfg);
  const auto t1 = std::chrono::steady_clock::now();
  const double sweep_seconds = std::chrono::duration<double>(t1 - t0).count();
  std::printf("sweep finished in %.1f s\n", sweep_seconds);

  ExperimentConfig sweep_cfg_b = sweep_cfg;
  sweep_cfg_b.output_dir = std::string(kOutRoot) + "/sweep_b";
  sweep(sweep_cfg_b);

  const auto cells = cell_stats(sweep_a.rows);
  std::string detail;

  reporter.report(1, "workload-exactness", check_workload(detail), detail);
  reporter.report(2, "partition-reproduction", check_partition(cells, detail), detail);
  reporter.report(3, "bottleneck-unimodality", check_bi_unimodal(cells, detail),
                  detail);
  reporter.report(4, "peer-set-saturation",
                  check_peer_set_saturation(cells, sweep_cfg, detail), detail);
  reporter.report(5, "preemption-dominance",
                  check_preemption_dominance(cells, sweep_cfg, detail), detail);
  reporter.report(6, "preemption-optimum",
                  check_preemption_optimum(cells, sweep_cfg, detail), detail);
  reporter.report(7, "no-clustering", check_no_clustering(sweep_cfg, detail), detail);
  reporter.report(8, "oracle-equivalence", check_oracles(detail), detail);
  reporter.report(9, "invariant-suite", check_invariants(detail), detail);

  {
    const std::string a = slurp(fs::path(sweep_cfg.output_dir) / "metrics.csv");
    const std::string b = slurp(fs::path(sweep_cfg_b.output_dir) / "metrics.csv");
    const bool identical = !a.empty() && a == b;
    const bool fast_enough = sweep_seconds < 600.0;
    detail = std::string(identical ? "metrics.csv byte-identical across sweeps"
                                   : "metrics.csv differs between sweeps") +
             ", sweep took " + fmt(sweep_seconds) + " s" +
             (fast_enough ? "" : " (over the 600 s budget)");
    reporter.report(10, "determinism-and-runtime", identical && fast_enough, detail);
  }

  if (reporter.failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", reporter.failures);
  return 1;
}
