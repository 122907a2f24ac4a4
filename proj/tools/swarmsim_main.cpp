// swarmsim command-line front end. Parses flags, forwards them to the C API
// and runs the configured sweep. A key=value config file may supply any
// option; explicit flags override it.

#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "swarmsim.h"

namespace {

struct OptionBinding {
  std::string flag;  // CLI11 option name
  std::string key;   // configuration key
  std::string value; // parsed text value
};

int die(const char* context) {
  std::fprintf(stderr, "swarmsim: %s: %s\n", context, swarmsim_last_error());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"swarm overlay construction simulator: sweeps the maximum "
               "number of outgoing connections for the tracker and preemption "
               "strategies and writes plot-ready CSV and edge-list files"};
  app.set_version_flag("--version", swarmsim_version());

  std::string config_path;
  app.add_option("--config", config_path,
                 "key=value configuration file; flags given on the command "
                 "line take precedence");

  std::vector<OptionBinding> bindings = {
      {"--strategy", "strategy", "both"},
      {"--omax", "omax", "5:80:5"},
      {"--runs", "runs", "10"},
      {"--max-peer-set", "max_peer_set", "80"},
      {"--min-neighbors", "min_neighbors", "20"},
      {"--response-size", "response_size", "80"},
      {"--min-request-interval", "min_request_interval", "5"},
      {"--snapshot-times", "snapshot_times", "10"},
      {"--horizon", "horizon", "70"},
      {"--seed", "seed", "1"},
      {"--jobs", "jobs", "0"},
      {"--out", "out", "out"},
      {"--preemption-cap", "preemption_cap", "none"},
  };
  const char* descriptions[] = {
      "strategy to simulate: tracker, preemption or both",
      "outgoing-connection cap values: comma list or start:stop:step",
      "independent runs per (strategy, omax) cell",
      "maximum peer set size",
      "peer-set threshold that triggers a tracker re-announce",
      "number of peers in a tracker response",
      "minimum minutes between re-announces of one peer",
      "comma-separated snapshot times in minutes",
      "simulated minutes per run",
      "base seed; per-run seeds derive from it",
      "parallel runs (0 = one per hardware thread)",
      "output directory",
      "fraction of the peer set admissible via preemption (or 'none')",
  };
  for (std::size_t i = 0; i < bindings.size(); ++i)
    app.add_option(bindings[i].flag, bindings[i].value, descriptions[i]);

  bool ungraceful = false;
  app.add_flag("--ungraceful-leaves", ungraceful,
               "departing peers skip the tracker goodbye and are reaped by "
               "heartbeat expiry instead");

  CLI11_PARSE(app, argc, argv);

  swarmsim_config* cfg = swarmsim_config_new();
  if (!cfg) {
    std::fprintf(stderr, "swarmsim: out of memory\n");
    return 1;
  }

  int rc = 0;
  if (!config_path.empty() &&
      swarmsim_config_load_file(cfg, config_path.c_str()) != SWARMSIM_OK)
    rc = die("--config");

  if (rc == 0) {
    for (const OptionBinding& b : bindings) {
      if (app.count(b.flag) == 0) continue;
      if (swarmsim_config_set(cfg, b.key.c_str(), b.value.c_str()) != SWARMSIM_OK) {
        rc = die(b.flag.c_str());
        break;
      }
    }
  }
  if (rc == 0 && ungraceful &&
      swarmsim_config_set(cfg, "ungraceful_leaves", "true") != SWARMSIM_OK)
    rc = die("--ungraceful-leaves");

  if (rc == 0) {
    if (swarmsim_sweep(cfg, nullptr) != SWARMSIM_OK)
      rc = die("sweep");
    else
      std::printf("swarmsim: sweep complete, outputs in %s\n",
                  swarmsim_config_output_dir(cfg));
  }

  swarmsim_config_free(cfg);
  return rc;
}
