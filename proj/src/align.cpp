// SPDX-License-Identifier: Apache-2.0

#include "cbalign/align.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cbalign {

BeamChoice select_best(const PowerMap& map) {
  if (map.values.size() == 0)
    throw std::invalid_argument("select_best: empty map");
  BeamChoice best{0, 0, map.values(0, 0)};
  for (int j = 0; j < map.q(); ++j) {
    for (int i = 0; i < map.p(); ++i) {
      if (map.values(j, i) > best.value_linear) {
        best = BeamChoice{i, j, map.values(j, i)};
      }
    }
  }
  return best;
}

BeamChoice exhaustive_search(const PowerMap& phi_true) {
  return select_best(phi_true);
}

double nmse(const PowerMap& phi_true, const PowerMap& phi_hat) {
  if (phi_true.q() != phi_hat.q() || phi_true.p() != phi_hat.p())
    throw std::invalid_argument("nmse: dimension mismatch");
  const double denom = phi_true.values.squaredNorm();
  if (!(denom > 0.0))
    throw std::invalid_argument("nmse: zero true map");
  const Eigen::MatrixXd clamped = phi_hat.values.cwiseMax(0.0);
  return (phi_true.values - clamped).squaredNorm() / denom;
}

double rss_loss_db(const PowerMap& phi_true, const BeamChoice& cs_choice) {
  if (cs_choice.rx_idx < 0 || cs_choice.rx_idx >= phi_true.q() ||
      cs_choice.tx_idx < 0 || cs_choice.tx_idx >= phi_true.p())
    throw std::invalid_argument("rss_loss_db: choice indices out of range");
  const BeamChoice oracle = exhaustive_search(phi_true);
  if (oracle.rx_idx == cs_choice.rx_idx && oracle.tx_idx == cs_choice.tx_idx)
    return 0.0;
  const double achieved = phi_true.values(cs_choice.rx_idx, cs_choice.tx_idx);
  if (achieved == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(oracle.value_linear / achieved);
}

TrialReport run_trial(const PowerMap& phi_true, int p, int q, int m1, int m2,
                      double noise_sigma, const SolverSettings& settings,
                      std::uint64_t seed, RecoveryResult* capture) {
  if (p != phi_true.p() || q != phi_true.q())
    throw std::invalid_argument("run_trial: p/q do not match the map");
  if (m1 < 1 || m1 > p || m2 < 1 || m2 > q)
    throw std::invalid_argument("run_trial: (m1, m2) outside ([1,p], [1,q])");
  try {
    Rng rng(seed);
    const SamplePlan plan = draw_plan(rng, p, q, m1, m2);
    const MeasurementSet meas = sample(phi_true, plan, noise_sigma, rng);
    const Eigen::VectorXd y = meas.vectorized();

    const DctBasis basis =
        settings.dct_1d ? DctBasis::vector1d(p * q) : DctBasis::separable2d(q, p);

    LassoConfig config;
    config.omega = choose_penalty(plan, basis, y, settings.kappa);
    config.sigma = 1.0;  // penalty folded into omega
    config.max_iters = settings.max_iters;
    config.tol = settings.tol;
    config.step = settings.step;

    RecoveryResult recovery = solve_lasso(plan, basis, y, config);

    const PowerMap phi_hat = recovery.clamped_map();
    const BeamChoice cs_choice = select_best(phi_hat);
    const BeamChoice oracle = exhaustive_search(phi_true);

    TrialReport report;
    report.fraction = plan.fraction();
    report.m1 = m1;
    report.m2 = m2;
    report.nmse = nmse(phi_true, phi_hat);
    report.rss_loss_db = rss_loss_db(phi_true, cs_choice);
    report.exact_hit = cs_choice.rx_idx == oracle.rx_idx &&
                       cs_choice.tx_idx == oracle.tx_idx;
    report.seed = seed;
    report.iters_used = recovery.iters_used;
    report.converged = recovery.converged;
    report.final_objective = recovery.objective_trace.back();
    if (capture) *capture = std::move(recovery);
    return report;
  } catch (const std::exception& e) {
    throw std::runtime_error("trial seed=" + std::to_string(seed) + " m1=" +
                             std::to_string(m1) + " m2=" + std::to_string(m2) +
                             ": " + e.what());
  }
}

std::vector<AggregateRow> monte_carlo(
    const PowerMap& phi_true, const std::vector<std::pair<int, int>>& splits,
    int trials_per_point, double noise_sigma, const SolverSettings& settings,
    std::uint64_t base_seed, const TrialObserver& observer) {
  if (trials_per_point < 1)
    throw std::invalid_argument("monte_carlo: trials_per_point must be >= 1");
  if (splits.empty())
    throw std::invalid_argument("monte_carlo: no (m1, m2) splits given");

  std::vector<AggregateRow> rows;
  rows.reserve(splits.size());
  for (std::size_t point = 0; point < splits.size(); ++point) {
    const auto [m1, m2] = splits[point];
    AggregateRow row;
    row.m1 = m1;
    row.m2 = m2;
    row.trials = trials_per_point;

    double nmse_sum = 0.0;
    double loss_sum = 0.0;
    int finite_losses = 0;
    int hits = 0;
    for (int t = 0; t < trials_per_point; ++t) {
      const std::uint64_t seed =
          base_seed + point * static_cast<std::uint64_t>(trials_per_point) + t;
      RecoveryResult recovery;
      const TrialReport report =
          run_trial(phi_true, phi_true.p(), phi_true.q(), m1, m2, noise_sigma,
                    settings, seed, observer ? &recovery : nullptr);
      if (observer) observer(point, t, report, recovery);
      row.fraction = report.fraction;
      nmse_sum += report.nmse;
      if (std::isinf(report.rss_loss_db)) {
        ++row.infinite_loss_count;
      } else {
        loss_sum += report.rss_loss_db;
        ++finite_losses;
      }
      if (report.exact_hit) ++hits;
    }
    row.mean_nmse = nmse_sum / trials_per_point;
    row.mean_rss_loss_db =
        finite_losses > 0 ? loss_sum / finite_losses
                          : std::numeric_limits<double>::infinity();
    row.hit_rate = static_cast<double>(hits) / trials_per_point;
    rows.push_back(row);
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const AggregateRow& a, const AggregateRow& b) {
                     return a.fraction < b.fraction;
                   });
  return rows;
}

std::pair<int, int> balanced_split(int p, int q, double fraction) {
  if (p < 1 || q < 1)
    throw std::invalid_argument("balanced_split: p and q must be >= 1");
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw std::invalid_argument("balanced_split: fraction outside (0, 1]");

  const double n = static_cast<double>(p) * q;
  int best_m1 = 1, best_m2 = 1;
  double best_err = std::numeric_limits<double>::infinity();
  double best_imbalance = std::numeric_limits<double>::infinity();
  for (int m1 = 1; m1 <= p; ++m1) {
    for (int m2 = 1; m2 <= q; ++m2) {
      const double err = std::abs(m1 * m2 / n - fraction);
      const double imbalance = std::abs(static_cast<double>(m1) / p -
                                        static_cast<double>(m2) / q);
      if (err < best_err - 1e-15 ||
          (std::abs(err - best_err) <= 1e-15 &&
           imbalance < best_imbalance - 1e-15)) {
        best_err = err;
        best_imbalance = imbalance;
        best_m1 = m1;
        best_m2 = m2;
      }
    }
  }
  return {best_m1, best_m2};
}

}  // namespace cbalign
