// SPDX-License-Identifier: Apache-2.0

#ifndef CBALIGN_ALIGN_HPP
#define CBALIGN_ALIGN_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "cbalign/channelsynth.hpp"
#include "cbalign/lasso.hpp"

namespace cbalign {

struct BeamChoice {
  int tx_idx = 0;
  int rx_idx = 0;
  double value_linear = 0.0;
};

// Argmax over the map; ties break to the lowest rx index, then lowest tx.
BeamChoice select_best(const PowerMap& map);

// The n = p*q measurement baseline: select_best on the true map.
BeamChoice exhaustive_search(const PowerMap& phi_true);

// ||Phi - Phihat||_F^2 / ||Phi||_F^2 with negative estimate entries clamped
// to 0 before comparison. Throws on a zero true map.
double nmse(const PowerMap& phi_true, const PowerMap& phi_hat);

// 10*log10(Phi[oracle pair] / Phi[cs pair]) evaluated on the TRUE map;
// exactly 0 when the CS choice hits the oracle pair, +infinity when the true
// power at the CS pair is 0.
double rss_loss_db(const PowerMap& phi_true, const BeamChoice& cs_choice);

// Per-trial solver settings. The penalty is kappa * ||adjoint(y)||_inf,
// recomputed from each trial's measurements.
struct SolverSettings {
  double kappa = 0.05;
  int max_iters = 5000;
  double tol = 1e-8;
  double step = 0.0;       // 0 = auto
  bool dct_1d = false;     // vector-1d basis instead of separable-2d
};

struct TrialReport {
  double fraction = 0.0;
  int m1 = 0;
  int m2 = 0;
  double nmse = 0.0;
  double rss_loss_db = 0.0;
  bool exact_hit = false;
  std::uint64_t seed = 0;
  int iters_used = 0;
  bool converged = false;
  double final_objective = 0.0;
};

// Draw plan -> sample -> solve -> reconstruct -> select -> metrics.
// Fully deterministic given the seed. If capture is non-null the recovery
// result of the solve is stored there.
TrialReport run_trial(const PowerMap& phi_true, int p, int q, int m1, int m2,
                      double noise_sigma, const SolverSettings& settings,
                      std::uint64_t seed, RecoveryResult* capture = nullptr);

struct AggregateRow {
  double fraction = 0.0;
  int m1 = 0;
  int m2 = 0;
  double mean_nmse = 0.0;
  double mean_rss_loss_db = 0.0;  // over trials with finite loss
  double hit_rate = 0.0;
  int trials = 0;
  int infinite_loss_count = 0;
};

// Called once per finished trial, in deterministic (point, trial) order.
using TrialObserver = std::function<void(
    std::size_t point_idx, int trial_idx, const TrialReport& report,
    const RecoveryResult& recovery)>;

// Averages trials_per_point reports for each (m1, m2) split; rows come back
// sorted by fraction. Trial seeds are base_seed + global trial index, so the
// whole sweep is reproducible. Trials with infinite RSS loss are excluded
// from the dB mean and counted separately.
std::vector<AggregateRow> monte_carlo(
    const PowerMap& phi_true, const std::vector<std::pair<int, int>>& splits,
    int trials_per_point, double noise_sigma, const SolverSettings& settings,
    std::uint64_t base_seed, const TrialObserver& observer = {});

// Resolves a target measurement fraction to the (m1, m2) split whose
// realized fraction is closest; ties prefer the more balanced split
// (m1/p close to m2/q), then the smaller m1. For p=19, q=36 this maps
// 0.25 -> (9, 19), 0.37 -> (11, 23), 0.47 -> (14, 23).
std::pair<int, int> balanced_split(int p, int q, double fraction);

}  // namespace cbalign

#endif  // CBALIGN_ALIGN_HPP
