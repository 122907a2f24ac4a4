#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmsim/simulation.hpp"

namespace swarmsim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownKeyError : ConfigError {
  using ConfigError::ConfigError;
};
struct BadValueError : ConfigError {
  using ConfigError::ConfigError;
};

struct ExperimentConfig {
  std::vector<StrategyKind> strategies = {StrategyKind::tracker_default,
                                          StrategyKind::preemption};
  std::vector<int> omax_values = {5,  10, 15, 20, 25, 30, 35, 40,
                                  45, 50, 55, 60, 65, 70, 75, 80};
  int runs = 10;
  int max_peer_set = 80;
  int min_neighbors = 20;
  TrackerParams tracker;
  std::optional<double> preemption_cap;
  bool ungraceful_leaves = false;
  WorkloadConfig workload;
  std::vector<SimTime> snapshot_times = {SimTime::from_minutes(10)};
  SimTime horizon = SimTime::from_minutes(70);
  std::uint64_t base_seed = 1;
  int jobs = 0;  // 0: one worker per hardware thread
  std::string output_dir = "out";
  bool write_edge_files = true;
};

// One metrics.csv row: a (run, snapshot) cell.
struct RunRow {
  StrategyKind strategy = StrategyKind::tracker_default;
  int omax = 0;
  int run = 0;
  std::uint64_t seed = 0;
  MetricsSnapshot metrics;
};

// One summary.csv row: a metric aggregated over runs.
struct AggregateRow {
  StrategyKind strategy = StrategyKind::tracker_default;
  int omax = 0;
  SimTime taken_at;
  std::string metric;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct SweepResult {
  std::vector<RunRow> rows;
  std::vector<AggregateRow> aggregates;
};

const char* strategy_name(StrategyKind k);
StrategyKind parse_strategy(const std::string& name);

// Per-run seed: base_seed xored with the packed (strategy, omax, run) cell
// coordinates, widened through SplitMix64. Distinct cells always map to
// distinct seeds, so any single cell can be reproduced in isolation.
std::uint64_t derive_seed(std::uint64_t base_seed, StrategyKind strategy, int omax,
                          int run_index);

RunConfig make_run_config(const ExperimentConfig& cfg, StrategyKind strategy,
                          int omax, int run_index);

// Executes one run; returns a row per snapshot and, when enabled, writes the
// per-snapshot edge-list files into cfg.output_dir.
std::vector<RunRow> run_single(const ExperimentConfig& cfg, StrategyKind strategy,
                               int omax, int run_index);

// Full sweep over strategies x omax x runs; writes metrics.csv, summary.csv
// and the edge lists into cfg.output_dir. Runs may execute in parallel
// (cfg.jobs); outputs are byte-identical regardless of the worker count.
SweepResult sweep(const ExperimentConfig& cfg);

std::string metrics_csv_header();
std::string format_run_row(const RunRow& row);
std::string summary_csv_header();
std::string format_aggregate_row(const AggregateRow& row);
std::vector<AggregateRow> aggregate_rows(const ExperimentConfig& cfg,
                                         const std::vector<RunRow>& rows);

std::string edge_file_name(StrategyKind strategy, int omax, int run_index,
                           SimTime taken_at);

// Writes atomically: temp file in the same directory, then rename.
void write_text_file(const std::string& path, const std::string& content);

// Key=value configuration surface shared by the config file, the C API and
// the CLI. Unknown keys and unparsable values throw.
void apply_config_kv(ExperimentConfig& cfg, const std::string& key,
                     const std::string& value);
void load_config_file(ExperimentConfig& cfg, const std::string& path);

// "5,10,20" or "start:stop:step".
std::vector<int> parse_omax_values(const std::string& text);
// Comma-separated minutes.
std::vector<SimTime> parse_time_list(const std::string& text);

}  // namespace swarmsim
