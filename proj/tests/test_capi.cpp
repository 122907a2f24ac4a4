#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "swarmsim.h"

namespace fs = std::filesystem;

namespace {

struct ConfigHandle {
  swarmsim_config* cfg = swarmsim_config_new();
  ~ConfigHandle() { swarmsim_config_free(cfg); }
};

// Keep C-API unit runs small.
void shrink(swarmsim_config* cfg) {
  REQUIRE(swarmsim_config_set(cfg, "amplitude", "60") == SWARMSIM_OK);
  REQUIRE(swarmsim_config_set(cfg, "seed", "77") == SWARMSIM_OK);
}

}  // namespace

TEST_CASE("version and status strings exist") {
  CHECK(swarmsim_version() != nullptr);
  CHECK(std::strlen(swarmsim_status_name(SWARMSIM_OK)) > 0);
  CHECK(std::strlen(swarmsim_status_name(SWARMSIM_ERR_UNKNOWN_KEY)) > 0);
  CHECK(swarmsim_last_error() != nullptr);
}

TEST_CASE("config keys validate through the C surface") {
  ConfigHandle h;
  REQUIRE(h.cfg != nullptr);
  CHECK(swarmsim_config_set(h.cfg, "runs", "3") == SWARMSIM_OK);
  CHECK(swarmsim_config_set(h.cfg, "bogus", "1") == SWARMSIM_ERR_UNKNOWN_KEY);
  CHECK(std::strlen(swarmsim_last_error()) > 0);
  CHECK(swarmsim_config_set(h.cfg, "runs", "many") == SWARMSIM_ERR_BAD_VALUE);
  CHECK(swarmsim_config_set(nullptr, "runs", "3") == SWARMSIM_ERR_INVALID_ARG);
  CHECK(swarmsim_config_set(h.cfg, "out", "capi_dir") == SWARMSIM_OK);
  CHECK(std::string(swarmsim_config_output_dir(h.cfg)) == "capi_dir");
}

TEST_CASE("config files load through the C surface") {
  ConfigHandle h;
  const fs::path path = "capi_config.conf";
  {
    std::ofstream out(path);
    out << "runs=2\nomax=10\nstrategy=tracker\n";
  }
  CHECK(swarmsim_config_load_file(h.cfg, path.string().c_str()) == SWARMSIM_OK);
  CHECK(swarmsim_config_load_file(h.cfg, "missing.conf") == SWARMSIM_ERR_IO);
  {
    std::ofstream out(path);
    out << "gibberish=1\n";
  }
  CHECK(swarmsim_config_load_file(h.cfg, path.string().c_str()) ==
        SWARMSIM_ERR_UNKNOWN_KEY);
}

TEST_CASE("single runs expose metrics and sorted edges") {
  ConfigHandle h;
  shrink(h.cfg);
  swarmsim_result* res = nullptr;
  REQUIRE(swarmsim_run(h.cfg, "preemption", 40, 0, &res) == SWARMSIM_OK);
  REQUIRE(res != nullptr);
  CHECK(swarmsim_result_seed(res) != 0);
  REQUIRE(swarmsim_result_snapshot_count(res) == 1);

  swarmsim_metrics m{};
  REQUIRE(swarmsim_result_metrics(res, 0, &m) == SWARMSIM_OK);
  CHECK(m.time_minutes == doctest::Approx(10.0));
  CHECK(m.n_alive == 61);  // scaled seed + slot-1 arrivals
  CHECK(m.n_edges > 0);
  CHECK(m.bottleneck_index >= 0.0);
  CHECK(m.bottleneck_index <= 1.0);
  CHECK(m.avg_peer_set > 0.0);
  CHECK((m.connected == 0 || m.connected == 1));

  const int64_t edges = swarmsim_result_edge_count(res, 0);
  CHECK(edges == static_cast<int64_t>(m.n_edges));
  uint32_t prev_i = 0, prev_j = 0;
  for (int64_t e = 0; e < edges; ++e) {
    uint32_t i = 0, j = 0;
    REQUIRE(swarmsim_result_edge(res, 0, e, &i, &j) == SWARMSIM_OK);
    CHECK(i < j);
    if (e > 0) CHECK(std::make_pair(prev_i, prev_j) < std::make_pair(i, j));
    prev_i = i;
    prev_j = j;
  }
  CHECK(swarmsim_result_edge_count(res, 5) == -1);
  uint32_t i = 0, j = 0;
  CHECK(swarmsim_result_edge(res, 0, edges, &i, &j) == SWARMSIM_ERR_INVALID_ARG);
  CHECK(swarmsim_result_metrics(res, 9, &m) == SWARMSIM_ERR_INVALID_ARG);
  swarmsim_result_free(res);
}

TEST_CASE("identical run coordinates give identical results") {
  ConfigHandle h;
  shrink(h.cfg);
  auto run_edges = [&] {
    swarmsim_result* res = nullptr;
    REQUIRE(swarmsim_run(h.cfg, "tracker", 20, 2, &res) == SWARMSIM_OK);
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    const int64_t n = swarmsim_result_edge_count(res, 0);
    for (int64_t e = 0; e < n; ++e) {
      uint32_t i = 0, j = 0;
      REQUIRE(swarmsim_result_edge(res, 0, e, &i, &j) == SWARMSIM_OK);
      edges.emplace_back(i, j);
    }
    swarmsim_result_free(res);
    return edges;
  };
  CHECK(run_edges() == run_edges());
}

TEST_CASE("run rejects bad arguments") {
  ConfigHandle h;
  shrink(h.cfg);
  swarmsim_result* res = nullptr;
  CHECK(swarmsim_run(h.cfg, "gossip", 40, 0, &res) == SWARMSIM_ERR_BAD_VALUE);
  CHECK(res == nullptr);
  CHECK(swarmsim_run(h.cfg, "tracker", 0, 0, &res) == SWARMSIM_ERR_INVALID_ARG);
  CHECK(swarmsim_run(h.cfg, "tracker", 40, -1, &res) == SWARMSIM_ERR_INVALID_ARG);
  CHECK(swarmsim_run(nullptr, "tracker", 40, 0, &res) == SWARMSIM_ERR_INVALID_ARG);
}

TEST_CASE("sweeps write their artifacts through the C surface") {
  ConfigHandle h;
  shrink(h.cfg);
  REQUIRE(swarmsim_config_set(h.cfg, "runs", "1") == SWARMSIM_OK);
  REQUIRE(swarmsim_config_set(h.cfg, "omax", "20") == SWARMSIM_OK);
  REQUIRE(swarmsim_config_set(h.cfg, "strategy", "both") == SWARMSIM_OK);
  REQUIRE(swarmsim_config_set(h.cfg, "jobs", "1") == SWARMSIM_OK);
  const std::string dir = "capi_sweep_out";
  fs::remove_all(dir);
  REQUIRE(swarmsim_sweep(h.cfg, dir.c_str()) == SWARMSIM_OK);
  CHECK(fs::exists(fs::path(dir) / "metrics.csv"));
  CHECK(fs::exists(fs::path(dir) / "summary.csv"));
  CHECK(fs::exists(fs::path(dir) / "matrix_tracker_omax20_run0_t10.edges"));
  CHECK(fs::exists(fs::path(dir) / "matrix_preemption_omax20_run0_t10.edges"));
}
