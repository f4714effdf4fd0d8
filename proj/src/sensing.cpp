// SPDX-License-Identifier: Apache-2.0

#include "cbalign/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cbalign {

namespace {

// Partial Fisher-Yates: first k entries of a shuffled [0, n) permutation,
// returned sorted for a stable plan layout.
std::vector<int> sample_without_replacement(Rng& rng, int n, int k) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i) {
    const std::size_t j = i + rng.uniform_index(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

void check_lengths(const SamplePlan& plan, const DctBasis& basis) {
  if (basis.n() != plan.p * plan.q)
    throw std::invalid_argument("sensing: basis length != p*q");
  if (basis.separable() && (basis.q() != plan.q || basis.p() != plan.p))
    throw std::invalid_argument("sensing: basis factor sizes != (q, p)");
}

}  // namespace

void validate_plan(const SamplePlan& plan) {
  if (plan.p < 1 || plan.q < 1)
    throw std::invalid_argument("plan: codebook sizes must be >= 1");
  if (plan.tx_indices.empty() || plan.rx_indices.empty())
    throw std::invalid_argument("plan: m1 and m2 must be >= 1");
  if (plan.m1() > plan.p || plan.m2() > plan.q)
    throw std::invalid_argument("plan: more selections than codebook entries");
  auto check_distinct = [](const std::vector<int>& idx, int bound,
                           const char* what) {
    std::vector<int> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] < 0 || sorted[i] >= bound)
        throw std::invalid_argument(std::string("plan: ") + what +
                                    " index out of range");
      if (i > 0 && sorted[i] == sorted[i - 1])
        throw std::invalid_argument(std::string("plan: duplicate ") + what +
                                    " index");
    }
  };
  check_distinct(plan.tx_indices, plan.p, "tx");
  check_distinct(plan.rx_indices, plan.q, "rx");
}

SamplePlan draw_plan(Rng& rng, int p, int q, int m1, int m2) {
  if (m1 < 1 || m1 > p)
    throw std::invalid_argument("draw_plan: m1 outside [1, p]");
  if (m2 < 1 || m2 > q)
    throw std::invalid_argument("draw_plan: m2 outside [1, q]");
  SamplePlan plan;
  plan.p = p;
  plan.q = q;
  plan.tx_indices = sample_without_replacement(rng, p, m1);
  plan.rx_indices = sample_without_replacement(rng, q, m2);
  return plan;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> selection_matrices(
    const SamplePlan& plan) {
  validate_plan(plan);
  Eigen::MatrixXd S1 = Eigen::MatrixXd::Zero(plan.p, plan.m1());
  for (int k = 0; k < plan.m1(); ++k) S1(plan.tx_indices[k], k) = 1.0;
  Eigen::MatrixXd S2 = Eigen::MatrixXd::Zero(plan.m2(), plan.q);
  for (int k = 0; k < plan.m2(); ++k) S2(k, plan.rx_indices[k]) = 1.0;
  return {std::move(S1), std::move(S2)};
}

Eigen::VectorXd MeasurementSet::vectorized() const {
  return Eigen::Map<const Eigen::VectorXd>(Y.data(), Y.size());
}

MeasurementSet sample(const PowerMap& phi, const SamplePlan& plan,
                      double noise_sigma, Rng& rng) {
  validate_plan(plan);
  if (plan.p != phi.p() || plan.q != phi.q())
    throw std::invalid_argument("sample: plan/map dimension mismatch");
  if (noise_sigma < 0.0)
    throw std::invalid_argument("sample: noise_sigma must be >= 0");

  MeasurementSet out;
  out.plan = plan;
  out.noise_sigma = noise_sigma;
  out.Y.resize(plan.m2(), plan.m1());
  // Row-major fill order keeps the noise stream tied to (rx, tx) position.
  for (int k = 0; k < plan.m2(); ++k) {
    for (int l = 0; l < plan.m1(); ++l) {
      double v = phi.values(plan.rx_indices[k], plan.tx_indices[l]);
      if (noise_sigma > 0.0) v += rng.normal(0.0, noise_sigma);
      out.Y(k, l) = std::max(0.0, v);
    }
  }
  return out;
}

Eigen::VectorXd forward_apply(const SamplePlan& plan, const DctBasis& basis,
                              const Eigen::VectorXd& xhat) {
  validate_plan(plan);
  check_lengths(plan, basis);
  if (xhat.size() != basis.n())
    throw std::invalid_argument("forward_apply: coefficient length mismatch");

  const Eigen::VectorXd spatial = dct_inverse(basis, xhat);
  const Eigen::Map<const Eigen::MatrixXd> grid(spatial.data(), plan.q, plan.p);
  Eigen::VectorXd y(plan.m());
  for (int l = 0; l < plan.m1(); ++l)
    for (int k = 0; k < plan.m2(); ++k)
      y(l * plan.m2() + k) = grid(plan.rx_indices[k], plan.tx_indices[l]);
  return y;
}

Eigen::VectorXd adjoint_apply(const SamplePlan& plan, const DctBasis& basis,
                              const Eigen::VectorXd& y) {
  validate_plan(plan);
  check_lengths(plan, basis);
  if (y.size() != plan.m())
    throw std::invalid_argument("adjoint_apply: measurement length mismatch");

  Eigen::MatrixXd grid = Eigen::MatrixXd::Zero(plan.q, plan.p);
  for (int l = 0; l < plan.m1(); ++l)
    for (int k = 0; k < plan.m2(); ++k)
      grid(plan.rx_indices[k], plan.tx_indices[l]) = y(l * plan.m2() + k);
  const Eigen::Map<const Eigen::VectorXd> spatial(grid.data(), basis.n());
  return dct_forward(basis, spatial);
}

double operator_norm_estimate(const SamplePlan& plan, const DctBasis& basis,
                              int iterations) {
  validate_plan(plan);
  check_lengths(plan, basis);
  // Fixed internal seed: the estimate is part of deterministic solver setup.
  Rng rng(0x9e3779b97f4a7c15ULL);
  Eigen::VectorXd v(basis.n());
  for (int i = 0; i < basis.n(); ++i) v(i) = rng.uniform(-1.0, 1.0);
  double norm = v.norm();
  if (norm == 0.0) return 0.0;
  for (int it = 0; it < iterations; ++it) {
    v /= norm;
    v = adjoint_apply(plan, basis, forward_apply(plan, basis, v));
    norm = v.norm();
    if (norm == 0.0) return 0.0;
  }
  return std::sqrt(norm);
}

}  // namespace cbalign
