// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "cbalign/rng.hpp"
#include "cbalign/xform.hpp"
#include "oracles.hpp"

using namespace cbalign;

namespace {

Eigen::VectorXd random_vector(Rng& rng, int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.uniform(-1.0, 1.0);
  return v;
}

}  // namespace

TEST_CASE("constant input compacts to a single DC coefficient") {
  const DctBasis basis = DctBasis::vector1d(8);
  const double c = 2.5;
  const Eigen::VectorXd xhat =
      dct_forward(basis, Eigen::VectorXd::Constant(8, c));
  CHECK(xhat(0) == doctest::Approx(c * std::sqrt(8.0)).epsilon(1e-14));
  for (int k = 1; k < 8; ++k) CHECK(std::abs(xhat(k)) < 1e-13);

  // And back: a pure DC coefficient inverts to a constant vector.
  Eigen::VectorXd dc = Eigen::VectorXd::Zero(8);
  dc(0) = std::sqrt(8.0);
  const Eigen::VectorXd ones = dct_inverse(basis, dc);
  for (int i = 0; i < 8; ++i)
    CHECK(ones(i) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("forward matches the explicit DCT-II matrix") {
  const DctBasis basis = DctBasis::vector1d(4);
  Eigen::VectorXd x(4);
  x << 1, 2, 3, 4;
  const Eigen::VectorXd got = dct_forward(basis, x);
  const Eigen::VectorXd want = oracles::dct2_matrix(4) * x;
  CHECK((got - want).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("round trip is the identity in both modes") {
  Rng rng(11);
  for (const bool separable : {false, true}) {
    const DctBasis basis =
        separable ? DctBasis::separable2d(4, 3) : DctBasis::vector1d(12);
    const Eigen::VectorXd x = random_vector(rng, 12);
    const Eigen::VectorXd back = dct_inverse(basis, dct_forward(basis, x));
    CHECK((back - x).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("separable mode equals the Kronecker matrix") {
  const int q = 4, p = 3;
  const DctBasis basis = DctBasis::separable2d(q, p);
  const Eigen::MatrixXd psi =
      oracles::kron(oracles::dct2_matrix(p), oracles::dct2_matrix(q));
  Rng rng(12);
  const Eigen::VectorXd x = random_vector(rng, q * p);
  CHECK((dct_forward(basis, x) - psi * x).lpNorm<Eigen::Infinity>() < 1e-12);
  CHECK((dct_inverse(basis, x) - psi.transpose() * x)
            .lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("separable equals Kronecker for all small factor sizes") {
  Rng rng(13);
  for (int q = 1; q <= 8; ++q) {
    for (int p = 1; p <= 8; ++p) {
      if (q * p > 64) continue;
      const DctBasis basis = DctBasis::separable2d(q, p);
      const Eigen::MatrixXd psi =
          oracles::kron(oracles::dct2_matrix(p), oracles::dct2_matrix(q));
      const Eigen::VectorXd x = random_vector(rng, q * p);
      CHECK((dct_forward(basis, x) - psi * x).lpNorm<Eigen::Infinity>() <
            1e-12);
    }
  }
}

TEST_CASE("Parseval holds across representative lengths") {
  Rng rng(14);
  for (int n : {12, 100, 684}) {
    const DctBasis basis = DctBasis::vector1d(n);
    const Eigen::VectorXd x = random_vector(rng, n);
    CHECK(std::abs(dct_forward(basis, x).norm() - x.norm()) < 1e-10);
  }
  const DctBasis sep = DctBasis::separable2d(36, 19);
  const Eigen::VectorXd x = random_vector(rng, 684);
  CHECK(std::abs(dct_forward(sep, x).norm() - x.norm()) < 1e-10);
}

TEST_CASE("length mismatch is rejected") {
  const DctBasis basis = DctBasis::vector1d(8);
  CHECK_THROWS_AS(dct_forward(basis, Eigen::VectorXd::Zero(7)),
                  std::invalid_argument);
  CHECK_THROWS_AS(dct_inverse(basis, Eigen::VectorXd::Zero(9)),
                  std::invalid_argument);
}

TEST_CASE("energy_compaction basics") {
  Eigen::VectorXd sparse = Eigen::VectorXd::Zero(16);
  sparse(5) = 3.0;
  CHECK(energy_compaction(sparse, 1.0 / 16) == doctest::Approx(1.0));
  CHECK(energy_compaction(sparse, 1.0) == doctest::Approx(1.0));

  Rng rng(15);
  const Eigen::VectorXd dense = random_vector(rng, 32);
  CHECK(energy_compaction(dense, 1.0) == doctest::Approx(1.0));

  CHECK_THROWS_AS(energy_compaction(Eigen::VectorXd::Zero(4), 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(energy_compaction(sparse, 0.0), std::invalid_argument);
}

TEST_CASE("energy_compaction is monotone in the kept fraction") {
  Rng rng(16);
  const Eigen::VectorXd v = random_vector(rng, 50);
  double prev = 0.0;
  for (double fraction : {0.05, 0.1, 0.2, 0.4, 0.7, 1.0}) {
    const double cur = energy_compaction(v, fraction);
    CHECK(cur >= prev - 1e-15);
    prev = cur;
  }
}
