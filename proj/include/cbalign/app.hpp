// SPDX-License-Identifier: Apache-2.0

#ifndef CBALIGN_APP_HPP
#define CBALIGN_APP_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cbalign/align.hpp"
#include "cbalign/arraygeom.hpp"
#include "cbalign/channelsynth.hpp"

namespace cbalign {

// Full run configuration: flat key=value config file plus command-line
// overrides. Every key is documented in config_help().
struct RunConfig {
  // Codebooks: CSV paths win over the synthetic uniform-grid parameters.
  std::string tx_codebook_csv;
  std::string rx_codebook_csv;
  double tx_start_deg = -45.0, tx_stop_deg = 45.0, tx_step_deg = 5.0;
  int tx_elems = 16;
  double rx_start_deg = -180.0, rx_stop_deg = 170.0, rx_step_deg = 10.0;
  int rx_elems = 16;

  // Ground-truth map source: "direct" (cluster blobs), "rays" (geometric
  // multipath channel), or "csv" (measured grid).
  std::string map_source = "direct";
  std::string grid_csv;
  bool grid_db = false;
  int clusters = 2;  // blob count in direct mode, path count in rays mode
  double dynamic_range_db = 30.0;
  double floor_db = -40.0;

  // Experiment sweep. Fraction tokens are either plain fractions ("0.25")
  // resolved to a balanced (m1, m2) split, or explicit "m1xm2" pairs.
  std::vector<std::string> fractions = {"0.25", "0.37", "0.47"};
  int trials = 200;
  double noise_sigma = 0.0;
  double kappa = 0.05;
  int max_iters = 5000;
  double tol = 1e-8;
  double step = 0.0;
  std::string dct_mode = "separable-2d";  // or "vector-1d"
  std::uint64_t seed = 1;
  std::string out_dir = "out";
};

// Applies key=value lines from a flat config file onto cfg. '#' starts a
// comment. Unknown keys and malformed values throw.
void apply_config_file(RunConfig& cfg, const std::string& path);
void apply_key(RunConfig& cfg, const std::string& key,
               const std::string& value);

// Cross-field validation (paths exist, ranges sane). Throws on violation.
void validate_config(const RunConfig& cfg);

std::string config_help();

// Codebooks and ground-truth map assembled from the config.
SteeringCodebook build_tx_codebook(const RunConfig& cfg);
SteeringCodebook build_rx_codebook(const RunConfig& cfg);
PowerMap build_ground_truth(const RunConfig& cfg, int p, int q);

// Fraction tokens resolved against the codebook sizes, in config order.
std::vector<std::pair<int, int>> resolve_splits(const RunConfig& cfg, int p,
                                                int q);

// Subcommands. Return 0 on success, 1 on validation errors, 2 on runtime
// failures; diagnostics go to standard error.
int cmd_synth(const RunConfig& cfg);
int cmd_run(const RunConfig& cfg);
int cmd_ingest_check(const RunConfig& cfg);

}  // namespace cbalign

#endif  // CBALIGN_APP_HPP
