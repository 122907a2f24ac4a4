/*
 * swarmsim C API: drive overlay-construction simulations and parameter
 * sweeps through opaque handles.
 *
 * All functions returning swarmsim_status report SWARMSIM_OK on success.
 * On failure, swarmsim_last_error() carries a human-readable message for
 * the calling thread.
 */

#ifndef SWARMSIM_H
#define SWARMSIM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum swarmsim_status {
  SWARMSIM_OK = 0,
  SWARMSIM_ERR_INVALID_ARG = 1,
  SWARMSIM_ERR_UNKNOWN_KEY = 2,
  SWARMSIM_ERR_BAD_VALUE = 3,
  SWARMSIM_ERR_IO = 4,
  SWARMSIM_ERR_INTERNAL = 5
} swarmsim_status;

/* Experiment configuration (opaque). */
typedef struct swarmsim_config swarmsim_config;
/* The outcome of one simulation run (opaque). */
typedef struct swarmsim_result swarmsim_result;

/* Metrics of one snapshot within a run. */
typedef struct swarmsim_metrics {
  double time_minutes;
  uint32_t n_alive;
  uint64_t n_edges;
  double bottleneck_index;
  double avg_peer_set;
  uint32_t diameter; /* 0 = partitioned overlay (or fewer than two peers) */
  int connected;     /* 0 or 1 */
} swarmsim_metrics;

const char *swarmsim_version(void);
const char *swarmsim_status_name(swarmsim_status status);
/* Message describing the most recent failure on this thread; never NULL. */
const char *swarmsim_last_error(void);

/* Starts from the default experiment: both strategies, omax 5..80 step 5,
 * 10 runs, max peer set 80, min neighbors 20, response size 80,
 * snapshot at 10 minutes, horizon 70 minutes. */
swarmsim_config *swarmsim_config_new(void);
void swarmsim_config_free(swarmsim_config *cfg);

/* Sets one key. Keys match the key=value config-file surface, e.g.
 * "strategy", "omax", "runs", "max_peer_set", "min_neighbors",
 * "response_size", "min_request_interval", "snapshot_times", "horizon",
 * "seed", "jobs", "out", "preemption_cap", "ungraceful_leaves". */
swarmsim_status swarmsim_config_set(swarmsim_config *cfg, const char *key,
                                    const char *value);

/* Applies a plain-text key=value file ('#' comments allowed). */
swarmsim_status swarmsim_config_load_file(swarmsim_config *cfg, const char *path);

/* Currently configured output directory; valid while cfg is alive. */
const char *swarmsim_config_output_dir(const swarmsim_config *cfg);

/* Executes a single run of `strategy` ("tracker" or "preemption") at the
 * given maximum-outgoing-connections value. run_index selects the per-run
 * seed derived from the configured base seed. */
swarmsim_status swarmsim_run(const swarmsim_config *cfg, const char *strategy,
                             int omax, int run_index, swarmsim_result **out);
void swarmsim_result_free(swarmsim_result *res);

uint64_t swarmsim_result_seed(const swarmsim_result *res);
int swarmsim_result_snapshot_count(const swarmsim_result *res);
swarmsim_status swarmsim_result_metrics(const swarmsim_result *res, int snapshot,
                                        swarmsim_metrics *out);

/* Snapshot edge lists: (i, j) join-index pairs with i < j, sorted. */
int64_t swarmsim_result_edge_count(const swarmsim_result *res, int snapshot);
swarmsim_status swarmsim_result_edge(const swarmsim_result *res, int snapshot,
                                     int64_t index, uint32_t *peer_i,
                                     uint32_t *peer_j);

/* Runs the configured sweep and writes metrics.csv, summary.csv and the
 * edge-list files. out_dir overrides the configured output directory when
 * non-NULL. */
swarmsim_status swarmsim_sweep(const swarmsim_config *cfg, const char *out_dir);

#ifdef __cplusplus
}
#endif

#endif /* SWARMSIM_H */
