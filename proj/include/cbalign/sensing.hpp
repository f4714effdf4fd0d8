// SPDX-License-Identifier: Apache-2.0

#ifndef CBALIGN_SENSING_HPP
#define CBALIGN_SENSING_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "cbalign/channelsynth.hpp"
#include "cbalign/rng.hpp"
#include "cbalign/xform.hpp"

namespace cbalign {

// Randomly selected TX-beam and RX-beam index subsets. One RX index set is
// shared across all TX beams, so the sampled grid is the Cartesian product
// rx_indices x tx_indices and the measurement count is m = m1*m2.
struct SamplePlan {
  std::vector<int> tx_indices;  // m1 distinct indices into F, range [0, p)
  std::vector<int> rx_indices;  // m2 distinct indices into W, range [0, q)
  int p = 0;
  int q = 0;

  int m1() const { return static_cast<int>(tx_indices.size()); }
  int m2() const { return static_cast<int>(rx_indices.size()); }
  int m() const { return m1() * m2(); }
  double fraction() const {
    return static_cast<double>(m()) / (static_cast<double>(p) * q);
  }
};

void validate_plan(const SamplePlan& plan);

// Uniform sampling without replacement; deterministic for a fixed seed.
SamplePlan draw_plan(Rng& rng, int p, int q, int m1, int m2);

// Binary selection matrices: S1 is p x m1 with one 1 per column (at row
// tx_indices[k]); S2 is m2 x q with one 1 per row (at column rx_indices[k]).
// S2 * Phi * S1 extracts the sampled submatrix.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> selection_matrices(
    const SamplePlan& plan);

// Sampled power matrix Y (m2 x m1) plus the plan that produced it.
struct MeasurementSet {
  Eigen::MatrixXd Y;
  SamplePlan plan;
  double noise_sigma = 0.0;

  // Column-major vectorization of Y, the solver's measurement vector.
  Eigen::VectorXd vectorized() const;
};

// Y[k][l] = max(0, Phi[rx_indices[k]][tx_indices[l]] + eta) with
// eta ~ Normal(0, noise_sigma^2) drawn per entry; noiseless when sigma = 0.
MeasurementSet sample(const PowerMap& phi, const SamplePlan& plan,
                      double noise_sigma, Rng& rng);

// Matrix-free measurement operator: unvec the inverse transform of xhat to a
// q x p map, extract the sampled submatrix, re-vectorize. Agrees with the
// explicit (S1^T (x) S2) * Psi^{-1} construction.
Eigen::VectorXd forward_apply(const SamplePlan& plan, const DctBasis& basis,
                              const Eigen::VectorXd& xhat);

// Exact adjoint of forward_apply: scatter y onto the q x p grid, forward
// transform, vectorize.
Eigen::VectorXd adjoint_apply(const SamplePlan& plan, const DctBasis& basis,
                              const Eigen::VectorXd& y);

// Power-iteration estimate of the operator norm of forward_apply. The true
// norm never exceeds 1 (a selection of orthonormal-transform outputs).
double operator_norm_estimate(const SamplePlan& plan, const DctBasis& basis,
                              int iterations = 60);

}  // namespace cbalign

#endif  // CBALIGN_SENSING_HPP
