// SPDX-License-Identifier: Apache-2.0

#include "cbalign/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cbalign {

namespace {

double objective(const SamplePlan& plan, const DctBasis& basis,
                 const Eigen::VectorXd& y, const Eigen::VectorXd& x,
                 double penalty) {
  const double residual = (y - forward_apply(plan, basis, x)).squaredNorm();
  return 0.5 * residual + penalty * x.lpNorm<1>();
}

// Subgradient optimality of the LASSO at x: for zero coordinates the smooth
// gradient must stay within the penalty band, for active coordinates it must
// equal -sign(x_i)*penalty.
bool optimality_holds(const Eigen::VectorXd& grad, const Eigen::VectorXd& x,
                      double penalty, double opt_tol) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) == 0.0) {
      if (std::abs(grad(i)) > penalty + opt_tol) return false;
    } else {
      const double sign = x(i) > 0.0 ? 1.0 : -1.0;
      if (std::abs(grad(i) + sign * penalty) > opt_tol) return false;
    }
  }
  return true;
}

}  // namespace

PowerMap RecoveryResult::clamped_map() const {
  return make_power_map(phi_hat.cwiseMax(0.0));
}

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, double lambda) {
  if (lambda < 0.0)
    throw std::invalid_argument("soft_threshold: lambda must be >= 0");
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i)) - lambda;
    out(i) = mag > 0.0 ? (v(i) > 0.0 ? mag : -mag) : 0.0;
  }
  return out;
}

double choose_penalty(const SamplePlan& plan, const DctBasis& basis,
                      const Eigen::VectorXd& y, double kappa) {
  if (kappa < 0.0)
    throw std::invalid_argument("choose_penalty: kappa must be >= 0");
  if (!y.allFinite())
    throw std::invalid_argument("choose_penalty: measurements must be finite");
  if (y.size() == 0 || y.isZero(0.0)) return 0.0;
  return kappa * adjoint_apply(plan, basis, y).lpNorm<Eigen::Infinity>();
}

RecoveryResult solve_lasso(const SamplePlan& plan, const DctBasis& basis,
                           const Eigen::VectorXd& y,
                           const LassoConfig& config) {
  validate_plan(plan);
  if (y.size() != plan.m())
    throw std::invalid_argument("solve_lasso: measurement length mismatch");
  if (!y.allFinite())
    throw std::invalid_argument("solve_lasso: measurements must be finite");
  if (config.omega < 0.0 || config.sigma < 0.0)
    throw std::invalid_argument("solve_lasso: omega and sigma must be >= 0");
  if (config.max_iters < 1)
    throw std::invalid_argument("solve_lasso: max_iters must be >= 1");
  if (!(config.tol > 0.0))
    throw std::invalid_argument("solve_lasso: tol must be > 0");

  // The operator norm is at most 1, so any step in (0, 1] satisfies the
  // 1/L descent condition. Auto mode tightens it with the power-iteration
  // estimate padded by 1.01.
  double step = config.step;
  if (step == 0.0) {
    const double rho = operator_norm_estimate(plan, basis);
    step = std::min(1.0, 1.0 / (1.01 * rho * rho));
  } else if (!(step > 0.0 && step <= 1.0)) {
    throw std::invalid_argument("solve_lasso: step outside (0, 1]");
  }

  const double penalty = config.penalty();
  const double opt_tol = 1e-6 * (penalty + 1.0);
  const int n = basis.n();

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd momentum_pt = x;
  double t = 1.0;
  double fx = objective(plan, basis, y, x, penalty);
  const double f0 = fx;

  RecoveryResult result;
  result.objective_trace.reserve(config.max_iters + 1);
  result.objective_trace.push_back(fx);

  auto prox_step = [&](const Eigen::VectorXd& from) {
    const Eigen::VectorXd grad =
        adjoint_apply(plan, basis, forward_apply(plan, basis, from) - y);
    return soft_threshold(from - step * grad, step * penalty);
  };

  for (int iter = 1; iter <= config.max_iters; ++iter) {
    Eigen::VectorXd candidate = prox_step(momentum_pt);
    double f_candidate = objective(plan, basis, y, candidate, penalty);

    if (f_candidate <= fx) {
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      momentum_pt = candidate + ((t - 1.0) / t_next) * (candidate - x);
      x.swap(candidate);
      t = t_next;
    } else {
      // Momentum overshot; restart with a plain proximal step from x,
      // which cannot increase the objective for step <= 1/L.
      candidate = prox_step(x);
      f_candidate = objective(plan, basis, y, candidate, penalty);
      t = 1.0;
      if (f_candidate <= fx) {
        x.swap(candidate);
      } else {
        f_candidate = fx;  // keep x; floating-point tie
      }
      momentum_pt = x;
    }

    const double f_prev = fx;
    fx = f_candidate;
    result.objective_trace.push_back(fx);
    result.iters_used = iter;

    const double denom =
        std::max({f_prev, 1e-12 * f0, std::numeric_limits<double>::min()});
    if ((f_prev - fx) / denom < config.tol) {
      const Eigen::VectorXd grad =
          adjoint_apply(plan, basis, forward_apply(plan, basis, x) - y);
      if (optimality_holds(grad, x, penalty, opt_tol)) {
        result.converged = true;
        break;
      }
    }
  }

  result.x_hat = x;
  const Eigen::VectorXd spatial = dct_inverse(basis, x);
  result.phi_hat = Eigen::Map<const Eigen::MatrixXd>(spatial.data(), plan.q,
                                                     plan.p);
  result.min_entry = result.phi_hat.minCoeff();
  result.negative_entries =
      static_cast<int>((result.phi_hat.array() < 0.0).count());
  return result;
}

}  // namespace cbalign
