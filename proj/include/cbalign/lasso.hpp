// SPDX-License-Identifier: Apache-2.0

#ifndef CBALIGN_LASSO_HPP
#define CBALIGN_LASSO_HPP

#include <Eigen/Dense>
#include <vector>

#include "cbalign/channelsynth.hpp"
#include "cbalign/sensing.hpp"
#include "cbalign/xform.hpp"

namespace cbalign {

// Parameters of the l1-regularized least-squares solve
//   min 0.5*||y - A Psi^{-1} xhat||^2 + omega*sigma*||xhat||_1.
struct LassoConfig {
  double omega = 1.0;    // regularization weight
  double sigma = 0.0;    // noise std folded into the penalty
  int max_iters = 5000;
  double tol = 1e-8;     // relative objective-change stopping threshold
  double step = 0.0;     // gradient step; 0 selects 1/L automatically

  double penalty() const { return omega * sigma; }
};

struct RecoveryResult {
  Eigen::VectorXd x_hat;           // DCT coefficients, length n
  Eigen::MatrixXd phi_hat;         // unvec(Psi^{-1} x_hat), q x p, unclamped
  int iters_used = 0;
  std::vector<double> objective_trace;  // non-increasing
  bool converged = false;
  int negative_entries = 0;        // count of phi_hat entries below 0
  double min_entry = 0.0;          // most negative reconstructed value

  // phi_hat with negative entries clamped to 0, for metrics and export.
  PowerMap clamped_map() const;
};

// Elementwise sign(v_i) * max(|v_i| - lambda, 0).
Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, double lambda);

// Accelerated proximal gradient (FISTA) with a monotone restart, run until
// both the relative objective change falls below config.tol and the
// subgradient optimality conditions hold within 1e-6*(penalty+1), or until
// max_iters (converged = false, not an error).
RecoveryResult solve_lasso(const SamplePlan& plan, const DctBasis& basis,
                           const Eigen::VectorXd& y, const LassoConfig& config);

// Default penalty rule: omega*sigma = kappa * ||adjoint(y)||_inf. At
// kappa >= 1 the zero vector is already optimal, which bounds the useful
// range from above.
double choose_penalty(const SamplePlan& plan, const DctBasis& basis,
                      const Eigen::VectorXd& y, double kappa = 0.05);

}  // namespace cbalign

#endif  // CBALIGN_LASSO_HPP
