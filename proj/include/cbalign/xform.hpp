// SPDX-License-Identifier: Apache-2.0

#ifndef CBALIGN_XFORM_HPP
#define CBALIGN_XFORM_HPP

#include <Eigen/Dense>

namespace cbalign {

// Orthonormal DCT-II matrix of size n x n:
// D(k,m) = c_k * cos(pi*(2m+1)*k / (2n)), c_0 = sqrt(1/n), c_k>0 = sqrt(2/n).
Eigen::MatrixXd dct_matrix(int n);

// Sparsifying basis applied to vectorized q x p power maps. Two modes:
//  - vector-1d: one length-n DCT over the vectorized map;
//  - separable-2d: length-q DCT over columns and length-p DCT over rows of
//    the reshaped matrix, equivalent to Psi = Psi_p (x) Psi_q under
//    column-major vectorization.
// The basis is orthonormal in both modes, so the inverse is the transpose.
class DctBasis {
 public:
  static DctBasis vector1d(int n);
  static DctBasis separable2d(int q, int p);

  int n() const { return n_; }
  bool separable() const { return separable_; }
  int q() const { return q_; }
  int p() const { return p_; }

 private:
  DctBasis() = default;
  friend Eigen::VectorXd dct_forward(const DctBasis&, const Eigen::VectorXd&);
  friend Eigen::VectorXd dct_inverse(const DctBasis&, const Eigen::VectorXd&);

  int n_ = 0;
  bool separable_ = false;
  int q_ = 0, p_ = 0;
  Eigen::MatrixXd dct_full_;  // n x n (vector-1d mode)
  Eigen::MatrixXd dct_q_;     // q x q (separable mode)
  Eigen::MatrixXd dct_p_;     // p x p (separable mode)
};

Eigen::VectorXd dct_forward(const DctBasis& basis, const Eigen::VectorXd& x);
Eigen::VectorXd dct_inverse(const DctBasis& basis, const Eigen::VectorXd& xhat);

// Fraction of total energy captured by the ceil(fraction*n) largest-magnitude
// coefficients. fraction must lie in (0, 1]; input must be nonzero.
double energy_compaction(const Eigen::VectorXd& coeffs, double fraction);

}  // namespace cbalign

#endif  // CBALIGN_XFORM_HPP
