// SPDX-License-Identifier: Apache-2.0

#include "cbalign/xform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace cbalign {

Eigen::MatrixXd dct_matrix(int n) {
  if (n < 1) throw std::invalid_argument("dct_matrix: n must be >= 1");
  Eigen::MatrixXd D(n, n);
  const double c0 = std::sqrt(1.0 / n);
  const double ck = std::sqrt(2.0 / n);
  for (int k = 0; k < n; ++k) {
    const double scale = k == 0 ? c0 : ck;
    for (int m = 0; m < n; ++m)
      D(k, m) = scale * std::cos(M_PI * (2.0 * m + 1.0) * k / (2.0 * n));
  }
  return D;
}

DctBasis DctBasis::vector1d(int n) {
  DctBasis b;
  b.n_ = n;
  b.dct_full_ = dct_matrix(n);
  return b;
}

DctBasis DctBasis::separable2d(int q, int p) {
  if (q < 1 || p < 1)
    throw std::invalid_argument("DctBasis: factor sizes must be >= 1");
  DctBasis b;
  b.separable_ = true;
  b.q_ = q;
  b.p_ = p;
  b.n_ = q * p;
  b.dct_q_ = dct_matrix(q);
  b.dct_p_ = dct_matrix(p);
  return b;
}

Eigen::VectorXd dct_forward(const DctBasis& basis, const Eigen::VectorXd& x) {
  if (x.size() != basis.n_)
    throw std::invalid_argument("dct_forward: input length mismatch");
  if (!basis.separable_) return basis.dct_full_ * x;
  const Eigen::Map<const Eigen::MatrixXd> M(x.data(), basis.q_, basis.p_);
  const Eigen::MatrixXd T = basis.dct_q_ * M * basis.dct_p_.transpose();
  return Eigen::Map<const Eigen::VectorXd>(T.data(), basis.n_);
}

Eigen::VectorXd dct_inverse(const DctBasis& basis,
                            const Eigen::VectorXd& xhat) {
  if (xhat.size() != basis.n_)
    throw std::invalid_argument("dct_inverse: input length mismatch");
  if (!basis.separable_) return basis.dct_full_.transpose() * xhat;
  const Eigen::Map<const Eigen::MatrixXd> M(xhat.data(), basis.q_, basis.p_);
  const Eigen::MatrixXd T = basis.dct_q_.transpose() * M * basis.dct_p_;
  return Eigen::Map<const Eigen::VectorXd>(T.data(), basis.n_);
}

double energy_compaction(const Eigen::VectorXd& coeffs, double fraction) {
  if (coeffs.size() == 0 || coeffs.isZero(0.0))
    throw std::invalid_argument("energy_compaction: input must be nonzero");
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw std::invalid_argument("energy_compaction: fraction outside (0, 1]");

  const int n = static_cast<int>(coeffs.size());
  const int keep = std::min(
      n, static_cast<int>(std::ceil(fraction * static_cast<double>(n))));
  std::vector<double> energies(n);
  for (int i = 0; i < n; ++i) energies[i] = coeffs(i) * coeffs(i);
  std::partial_sort(energies.begin(), energies.begin() + keep, energies.end(),
                    std::greater<double>());
  double top = 0.0;
  for (int i = 0; i < keep; ++i) top += energies[i];
  return top / coeffs.squaredNorm();
}

}  // namespace cbalign
