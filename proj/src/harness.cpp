#include "swarmsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "swarmsim/rng.hpp"

namespace swarmsim {

namespace fs = std::filesystem;

const char* strategy_name(StrategyKind k) {
  switch (k) {
    case StrategyKind::tracker_default:
      return "tracker";
    case StrategyKind::preemption:
      return "preemption";
  }
  throw std::logic_error("strategy_name: bad enum");
}

StrategyKind parse_strategy(const std::string& name) {
  if (name == "tracker") return StrategyKind::tracker_default;
  if (name == "preemption") return StrategyKind::preemption;
  throw BadValueError("unknown strategy '" + name + "' (tracker|preemption)");
}

std::uint64_t derive_seed(std::uint64_t base_seed, StrategyKind strategy, int omax,
                          int run_index) {
  const std::uint64_t packed = (static_cast<std::uint64_t>(strategy) << 42) |
                               (static_cast<std::uint64_t>(omax) << 21) |
                               static_cast<std::uint64_t>(run_index);
  return mix64(base_seed ^ packed);
}

RunConfig make_run_config(const ExperimentConfig& cfg, StrategyKind strategy,
                          int omax, int run_index) {
  RunConfig rc;
  rc.strategy = strategy;
  rc.max_outgoing = omax;
  rc.max_peer_set = cfg.max_peer_set;
  rc.min_neighbors = cfg.min_neighbors;
  rc.tracker = cfg.tracker;
  rc.preemption_cap = cfg.preemption_cap;
  rc.ungraceful_leaves = cfg.ungraceful_leaves;
  rc.workload = cfg.workload;
  rc.snapshot_times = cfg.snapshot_times;
  rc.horizon = cfg.horizon;
  rc.seed = derive_seed(cfg.base_seed, strategy, omax, run_index);
  return rc;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string fmt_minutes(SimTime t) { return fmt_double(t.minutes()); }

std::string edge_list_text(const OverlaySnapshot& snap) {
  std::string out;
  out.reserve(snap.edges.size() * 12);
  char buf[48];
  for (const auto& [i, j] : snap.edges) {
    std::snprintf(buf, sizeof(buf), "%u\t%u\n", i, j);
    out += buf;
  }
  return out;
}

}  // namespace

std::string metrics_csv_header() {
  return "strategy,omax,run,seed,t,n_alive,n_edges,bottleneck_index,avg_peer_set,"
         "diameter,connected";
}

std::string format_run_row(const RunRow& row) {
  std::ostringstream os;
  os << strategy_name(row.strategy) << ',' << row.omax << ',' << row.run << ','
     << row.seed << ',' << fmt_minutes(row.metrics.taken_at) << ','
     << row.metrics.n_alive << ',' << row.metrics.n_edges << ','
     << fmt_double(row.metrics.bottleneck_index) << ','
     << fmt_double(row.metrics.avg_peer_set) << ',' << row.metrics.diameter << ','
     << (row.metrics.connected ? "true" : "false");
  return os.str();
}

std::string summary_csv_header() { return "strategy,omax,t,metric,mean,min,max"; }

std::string format_aggregate_row(const AggregateRow& row) {
  std::ostringstream os;
  os << strategy_name(row.strategy) << ',' << row.omax << ','
     << fmt_minutes(row.taken_at) << ',' << row.metric << ','
     << fmt_double(row.mean) << ',' << fmt_double(row.min) << ','
     << fmt_double(row.max);
  return os.str();
}

std::string edge_file_name(StrategyKind strategy, int omax, int run_index,
                           SimTime taken_at) {
  std::ostringstream os;
  os << "matrix_" << strategy_name(strategy) << "_omax" << omax << "_run"
     << run_index << "_t" << fmt_minutes(taken_at) << ".edges";
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec)
    throw IoError("cannot replace " + target.string() + ": " + ec.message());
}

std::vector<RunRow> run_single(const ExperimentConfig& cfg, StrategyKind strategy,
                               int omax, int run_index) {
  Simulation sim(make_run_config(cfg, strategy, omax, run_index));
  sim.run();
  std::vector<RunRow> rows;
  rows.reserve(sim.snapshots().size());
  for (const SnapshotResult& s : sim.snapshots()) {
    RunRow row;
    row.strategy = strategy;
    row.omax = omax;
    row.run = run_index;
    row.seed = sim.config().seed;
    row.metrics = s.metrics;
    rows.push_back(row);
    if (cfg.write_edge_files) {
      const fs::path p = fs::path(cfg.output_dir) /
                         edge_file_name(strategy, omax, run_index, s.metrics.taken_at);
      write_text_file(p.string(), edge_list_text(s.overlay));
    }
  }
  return rows;
}

std::vector<AggregateRow> aggregate_rows(const ExperimentConfig& cfg,
                                         const std::vector<RunRow>& rows) {
  std::vector<AggregateRow> out;
  const char* metric_names[] = {"bottleneck_index", "avg_peer_set", "diameter"};
  for (StrategyKind strategy : cfg.strategies) {
    for (int omax : cfg.omax_values) {
      for (SimTime t : cfg.snapshot_times) {
        for (int m = 0; m < 3; ++m) {
          AggregateRow agg;
          agg.strategy = strategy;
          agg.omax = omax;
          agg.taken_at = t;
          agg.metric = metric_names[m];
          double sum = 0.0;
          double lo = std::numeric_limits<double>::infinity();
          double hi = -std::numeric_limits<double>::infinity();
          int n = 0;
          for (const RunRow& row : rows) {
            if (row.strategy != strategy || row.omax != omax ||
                row.metrics.taken_at != t)
              continue;
            const double v = m == 0   ? row.metrics.bottleneck_index
                             : m == 1 ? row.metrics.avg_peer_set
                                      : static_cast<double>(row.metrics.diameter);
            sum += v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            ++n;
          }
          if (n == 0) continue;
          agg.mean = sum / n;
          agg.min = lo;
          agg.max = hi;
          out.push_back(std::move(agg));
        }
      }
    }
  }
  return out;
}

SweepResult sweep(const ExperimentConfig& cfg) {
  if (cfg.runs < 1) throw std::logic_error("sweep: runs must be >= 1");
  for (int omax : cfg.omax_values)
    if (omax < 1 || omax > cfg.max_peer_set)
      throw std::logic_error("sweep: omax outside [1, max_peer_set]");

  fs::create_directories(cfg.output_dir);

  struct Job {
    StrategyKind strategy;
    int omax;
    int run;
  };
  std::vector<Job> jobs;
  for (StrategyKind strategy : cfg.strategies)
    for (int omax : cfg.omax_values)
      for (int run = 0; run < cfg.runs; ++run) jobs.push_back({strategy, omax, run});

  std::vector<std::vector<RunRow>> per_job(jobs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = static_cast<unsigned>(
      std::clamp<std::size_t>(cfg.jobs > 0 ? cfg.jobs : hw, 1, jobs.size()));

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size() || failed.load()) return;
      try {
        per_job[i] = run_single(cfg, jobs[i].strategy, jobs[i].omax, jobs[i].run);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  // Abort on the first failure; artifacts of completed runs stay on disk.
  if (error) std::rethrow_exception(error);

  SweepResult result;
  for (auto& rows : per_job)
    result.rows.insert(result.rows.end(), rows.begin(), rows.end());
  result.aggregates = aggregate_rows(cfg, result.rows);

  std::string metrics_text = metrics_csv_header() + "\n";
  for (const RunRow& row : result.rows) metrics_text += format_run_row(row) + "\n";
  write_text_file((fs::path(cfg.output_dir) / "metrics.csv").string(), metrics_text);

  std::string summary_text = summary_csv_header() + "\n";
  for (const AggregateRow& row : result.aggregates)
    summary_text += format_aggregate_row(row) + "\n";
  write_text_file((fs::path(cfg.output_dir) / "summary.csv").string(), summary_text);

  return result;
}

namespace {

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw BadValueError("");
    return v;
  } catch (...) {
    throw BadValueError("key '" + key + "': expected an integer, got '" + value + "'");
  }
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw BadValueError("");
    return v;
  } catch (...) {
    throw BadValueError("key '" + key + "': expected a number, got '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw BadValueError("");
    return v;
  } catch (...) {
    throw BadValueError("key '" + key + "': expected an unsigned integer, got '" +
                        value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw BadValueError("key '" + key + "': expected a boolean, got '" + value + "'");
}

SimTime parse_minutes(const std::string& key, const std::string& value) {
  const double m = parse_double(key, value);
  if (m < 0) throw BadValueError("key '" + key + "': negative time");
  return SimTime::from_minutes(m);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<int> parse_omax_values(const std::string& text) {
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3)
      throw BadValueError("omax range must be start:stop:step, got '" + text + "'");
    const long long start = parse_int("omax", parts[0]);
    const long long stop = parse_int("omax", parts[1]);
    const long long step = parse_int("omax", parts[2]);
    if (step <= 0 || start > stop)
      throw BadValueError("omax range must ascend, got '" + text + "'");
    for (long long v = start; v <= stop; v += step) out.push_back(static_cast<int>(v));
  } else {
    for (const std::string& part : split(text, ','))
      out.push_back(static_cast<int>(parse_int("omax", trim(part))));
  }
  if (out.empty()) throw BadValueError("omax list is empty");
  for (int v : out)
    if (v < 1) throw BadValueError("omax values must be positive");
  return out;
}

std::vector<SimTime> parse_time_list(const std::string& text) {
  std::vector<SimTime> out;
  for (const std::string& part : split(text, ','))
    out.push_back(parse_minutes("snapshot_times", trim(part)));
  if (out.empty()) throw BadValueError("time list is empty");
  return out;
}

void apply_config_kv(ExperimentConfig& cfg, const std::string& key,
                     const std::string& value) {
  if (key == "strategy") {
    if (value == "both")
      cfg.strategies = {StrategyKind::tracker_default, StrategyKind::preemption};
    else
      cfg.strategies = {parse_strategy(value)};
  } else if (key == "omax") {
    cfg.omax_values = parse_omax_values(value);
  } else if (key == "runs") {
    const long long v = parse_int(key, value);
    if (v < 1) throw BadValueError("runs must be >= 1");
    cfg.runs = static_cast<int>(v);
  } else if (key == "max_peer_set") {
    const long long v = parse_int(key, value);
    if (v < 1) throw BadValueError("max_peer_set must be >= 1");
    cfg.max_peer_set = static_cast<int>(v);
  } else if (key == "min_neighbors") {
    const long long v = parse_int(key, value);
    if (v < 0) throw BadValueError("min_neighbors must be >= 0");
    cfg.min_neighbors = static_cast<int>(v);
  } else if (key == "response_size") {
    const long long v = parse_int(key, value);
    if (v < 0) throw BadValueError("response_size must be >= 0");
    cfg.tracker.response_size = static_cast<int>(v);
  } else if (key == "min_request_interval") {
    cfg.tracker.min_request_interval = parse_minutes(key, value);
  } else if (key == "heartbeat_period") {
    cfg.tracker.heartbeat_period = parse_minutes(key, value);
  } else if (key == "expiry_timeout") {
    cfg.tracker.expiry_timeout = parse_minutes(key, value);
  } else if (key == "snapshot_times") {
    cfg.snapshot_times = parse_time_list(value);
  } else if (key == "horizon") {
    cfg.horizon = parse_minutes(key, value);
  } else if (key == "seed") {
    cfg.base_seed = parse_u64(key, value);
  } else if (key == "jobs") {
    const long long v = parse_int(key, value);
    if (v < 0) throw BadValueError("jobs must be >= 0");
    cfg.jobs = static_cast<int>(v);
  } else if (key == "out") {
    if (value.empty()) throw BadValueError("out must not be empty");
    cfg.output_dir = value;
  } else if (key == "preemption_cap") {
    if (value == "none") {
      cfg.preemption_cap.reset();
    } else {
      const double v = parse_double(key, value);
      if (v <= 0.0 || v > 1.0) throw BadValueError("preemption_cap must be in (0, 1]");
      cfg.preemption_cap = v;
    }
  } else if (key == "ungraceful_leaves") {
    cfg.ungraceful_leaves = parse_bool(key, value);
  } else if (key == "slot_length") {
    const SimTime t = parse_minutes(key, value);
    if (t.ms() <= 0) throw BadValueError("slot_length must be positive");
    cfg.workload.slot_length = t;
  } else if (key == "amplitude") {
    const long long v = parse_int(key, value);
    if (v < 0) throw BadValueError("amplitude must be >= 0");
    cfg.workload.amplitude = static_cast<int>(v);
  } else if (key == "decay") {
    const double v = parse_double(key, value);
    if (v <= 0.0) throw BadValueError("decay must be positive");
    cfg.workload.decay = v;
  } else if (key == "active_slots") {
    const long long v = parse_int(key, value);
    if (v < 0) throw BadValueError("active_slots must be >= 0");
    cfg.workload.active_slots = static_cast<int>(v);
  } else if (key == "lifetime_min") {
    cfg.workload.lifetime_min = parse_minutes(key, value);
  } else if (key == "lifetime_max") {
    cfg.workload.lifetime_max = parse_minutes(key, value);
  } else if (key == "seed_immortal") {
    cfg.workload.seed_peer_immortal = parse_bool(key, value);
  } else if (key == "write_edge_files") {
    cfg.write_edge_files = parse_bool(key, value);
  } else {
    throw UnknownKeyError("unknown configuration key '" + key + "'");
  }
}

void load_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    const std::string where = path + ":" + std::to_string(line_no) + ": ";
    try {
      apply_config_kv(cfg, key, value);
    } catch (const UnknownKeyError& e) {
      throw UnknownKeyError(where + e.what());
    } catch (const BadValueError& e) {
      throw BadValueError(where + e.what());
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
}

}  // namespace swarmsim
