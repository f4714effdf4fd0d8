// SPDX-License-Identifier: Apache-2.0

#ifndef CBALIGN_CHANNELSYNTH_HPP
#define CBALIGN_CHANNELSYNTH_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "cbalign/arraygeom.hpp"
#include "cbalign/rng.hpp"

namespace cbalign {

struct PathComponent {
  std::complex<double> gain;
  double aod_deg = 0.0;  // angle of departure (TX side)
  double aoa_deg = 0.0;  // angle of arrival (RX side)
};

// Geometric multipath channel between a t-element AP and an r-element
// receiver. Each path contributes a rank-1 term to the channel matrix.
struct ClusterChannel {
  std::vector<PathComponent> paths;
  int t = 0;  // TX elements
  int r = 0;  // RX elements
};

void validate_channel(const ClusterChannel& ch);

// q x p matrix of received power over all (RX beam, TX beam) pairs.
// Rows index RX beams, columns index TX beams. Entries are linear power.
struct PowerMap {
  Eigen::MatrixXd values;

  int q() const { return static_cast<int>(values.rows()); }
  int p() const { return static_cast<int>(values.cols()); }
  int n() const { return q() * p(); }
};

// Validating constructor: rejects empty or negative maps.
PowerMap make_power_map(Eigen::MatrixXd values);

// H = sum_l gain_l * a_r(aoa_l) * a_t(aod_l)^H, shape r x t.
Eigen::MatrixXcd channel_matrix(const ClusterChannel& ch);

// values[j][i] = |w_j^* H f_i|^2 over the full codebooks; this is the
// exhaustive-search ground truth.
PowerMap power_map(const Eigen::MatrixXcd& H, const SteeringCodebook& F,
                   const SteeringCodebook& W);

// Synthetic ground-truth map without a physical channel: one dominant
// Gaussian cluster, n_clusters-1 weaker clusters at random centers with
// peaks up to dynamic_range_db below the dominant one, and a uniform floor
// at floor_db relative to the dominant peak (pass -infinity to disable).
// Deterministic for a fixed rng seed.
PowerMap synth_power_map_direct(Rng& rng, int p, int q, int n_clusters,
                                double dynamic_range_db, double floor_db);

}  // namespace cbalign

#endif  // CBALIGN_CHANNELSYNTH_HPP
