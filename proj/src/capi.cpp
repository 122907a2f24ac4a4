#include "swarmsim.h"

#include <exception>
#include <filesystem>
#include <memory>
#include <string>

#include "swarmsim/harness.hpp"

struct swarmsim_config {
  swarmsim::ExperimentConfig cfg;
};

struct swarmsim_result {
  std::uint64_t seed = 0;
  std::vector<swarmsim::SnapshotResult> snapshots;
};

namespace {

thread_local std::string g_last_error;

swarmsim_status fail(swarmsim_status status, const char* message) {
  g_last_error = message;
  return status;
}

swarmsim_status fail_current_exception() {
  try {
    throw;
  } catch (const swarmsim::UnknownKeyError& e) {
    return fail(SWARMSIM_ERR_UNKNOWN_KEY, e.what());
  } catch (const swarmsim::BadValueError& e) {
    return fail(SWARMSIM_ERR_BAD_VALUE, e.what());
  } catch (const swarmsim::ConfigError& e) {
    return fail(SWARMSIM_ERR_IO, e.what());
  } catch (const swarmsim::IoError& e) {
    return fail(SWARMSIM_ERR_IO, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(SWARMSIM_ERR_IO, e.what());
  } catch (const std::logic_error& e) {
    return fail(SWARMSIM_ERR_INVALID_ARG, e.what());
  } catch (const std::exception& e) {
    return fail(SWARMSIM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SWARMSIM_ERR_INTERNAL, "unknown error");
  }
}

}  // namespace

extern "C" {

const char* swarmsim_version(void) { return "1.0.0"; }

const char* swarmsim_status_name(swarmsim_status status) {
  switch (status) {
    case SWARMSIM_OK:
      return "ok";
    case SWARMSIM_ERR_INVALID_ARG:
      return "invalid argument";
    case SWARMSIM_ERR_UNKNOWN_KEY:
      return "unknown configuration key";
    case SWARMSIM_ERR_BAD_VALUE:
      return "bad configuration value";
    case SWARMSIM_ERR_IO:
      return "i/o error";
    case SWARMSIM_ERR_INTERNAL:
      return "internal error";
  }
  return "unrecognized status";
}

const char* swarmsim_last_error(void) { return g_last_error.c_str(); }

swarmsim_config* swarmsim_config_new(void) {
  try {
    return new swarmsim_config();
  } catch (...) {
    return nullptr;
  }
}

void swarmsim_config_free(swarmsim_config* cfg) { delete cfg; }

swarmsim_status swarmsim_config_set(swarmsim_config* cfg, const char* key,
                                    const char* value) {
  if (!cfg || !key || !value)
    return fail(SWARMSIM_ERR_INVALID_ARG, "null argument to swarmsim_config_set");
  try {
    swarmsim::apply_config_kv(cfg->cfg, key, value);
    return SWARMSIM_OK;
  } catch (...) {
    return fail_current_exception();
  }
}

swarmsim_status swarmsim_config_load_file(swarmsim_config* cfg, const char* path) {
  if (!cfg || !path)
    return fail(SWARMSIM_ERR_INVALID_ARG, "null argument to swarmsim_config_load_file");
  try {
    swarmsim::load_config_file(cfg->cfg, path);
    return SWARMSIM_OK;
  } catch (...) {
    return fail_current_exception();
  }
}

const char* swarmsim_config_output_dir(const swarmsim_config* cfg) {
  return cfg ? cfg->cfg.output_dir.c_str() : "";
}

swarmsim_status swarmsim_run(const swarmsim_config* cfg, const char* strategy,
                             int omax, int run_index, swarmsim_result** out) {
  if (!cfg || !strategy || !out)
    return fail(SWARMSIM_ERR_INVALID_ARG, "null argument to swarmsim_run");
  *out = nullptr;
  try {
    const swarmsim::StrategyKind kind = swarmsim::parse_strategy(strategy);
    if (omax < 1 || omax > cfg->cfg.max_peer_set)
      return fail(SWARMSIM_ERR_INVALID_ARG, "omax outside [1, max_peer_set]");
    if (run_index < 0)
      return fail(SWARMSIM_ERR_INVALID_ARG, "run_index must be >= 0");
    swarmsim::Simulation sim(
        swarmsim::make_run_config(cfg->cfg, kind, omax, run_index));
    sim.run();
    auto res = std::make_unique<swarmsim_result>();
    res->seed = sim.config().seed;
    res->snapshots = sim.snapshots();
    *out = res.release();
    return SWARMSIM_OK;
  } catch (...) {
    return fail_current_exception();
  }
}

void swarmsim_result_free(swarmsim_result* res) { delete res; }

uint64_t swarmsim_result_seed(const swarmsim_result* res) {
  return res ? res->seed : 0;
}

int swarmsim_result_snapshot_count(const swarmsim_result* res) {
  return res ? static_cast<int>(res->snapshots.size()) : 0;
}

swarmsim_status swarmsim_result_metrics(const swarmsim_result* res, int snapshot,
                                        swarmsim_metrics* out) {
  if (!res || !out)
    return fail(SWARMSIM_ERR_INVALID_ARG, "null argument to swarmsim_result_metrics");
  if (snapshot < 0 || snapshot >= static_cast<int>(res->snapshots.size()))
    return fail(SWARMSIM_ERR_INVALID_ARG, "snapshot index out of range");
  const swarmsim::MetricsSnapshot& m = res->snapshots[snapshot].metrics;
  out->time_minutes = m.taken_at.minutes();
  out->n_alive = static_cast<uint32_t>(m.n_alive);
  out->n_edges = static_cast<uint64_t>(m.n_edges);
  out->bottleneck_index = m.bottleneck_index;
  out->avg_peer_set = m.avg_peer_set;
  out->diameter = static_cast<uint32_t>(m.diameter);
  out->connected = m.connected ? 1 : 0;
  return SWARMSIM_OK;
}

int64_t swarmsim_result_edge_count(const swarmsim_result* res, int snapshot) {
  if (!res || snapshot < 0 || snapshot >= static_cast<int>(res->snapshots.size()))
    return -1;
  return static_cast<int64_t>(res->snapshots[snapshot].overlay.edges.size());
}

swarmsim_status swarmsim_result_edge(const swarmsim_result* res, int snapshot,
                                     int64_t index, uint32_t* peer_i,
                                     uint32_t* peer_j) {
  if (!res || !peer_i || !peer_j)
    return fail(SWARMSIM_ERR_INVALID_ARG, "null argument to swarmsim_result_edge");
  if (snapshot < 0 || snapshot >= static_cast<int>(res->snapshots.size()))
    return fail(SWARMSIM_ERR_INVALID_ARG, "snapshot index out of range");
  const auto& edges = res->snapshots[snapshot].overlay.edges;
  if (index < 0 || index >= static_cast<int64_t>(edges.size()))
    return fail(SWARMSIM_ERR_INVALID_ARG, "edge index out of range");
  *peer_i = edges[static_cast<std::size_t>(index)].first;
  *peer_j = edges[static_cast<std::size_t>(index)].second;
  return SWARMSIM_OK;
}

swarmsim_status swarmsim_sweep(const swarmsim_config* cfg, const char* out_dir) {
  if (!cfg) return fail(SWARMSIM_ERR_INVALID_ARG, "null config in swarmsim_sweep");
  try {
    swarmsim::ExperimentConfig local = cfg->cfg;
    if (out_dir) local.output_dir = out_dir;
    swarmsim::sweep(local);
    return SWARMSIM_OK;
  } catch (...) {
    return fail_current_exception();
  }
}

}  // extern "C"
