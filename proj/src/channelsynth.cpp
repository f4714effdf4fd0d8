// SPDX-License-Identifier: Apache-2.0

#include "cbalign/channelsynth.hpp"

#include <cmath>
#include <stdexcept>

namespace cbalign {

void validate_channel(const ClusterChannel& ch) {
  if (ch.paths.empty())
    throw std::invalid_argument("channel: needs at least one path");
  if (ch.t < 1 || ch.r < 1)
    throw std::invalid_argument("channel: element counts must be >= 1");
  double total = 0.0;
  for (const auto& path : ch.paths) {
    if (!(path.aod_deg >= -90.0 && path.aod_deg <= 90.0) ||
        !(path.aoa_deg >= -90.0 && path.aoa_deg <= 90.0))
      throw std::invalid_argument("channel: path angle outside steerable span");
    total += std::norm(path.gain);
  }
  if (!(total > 0.0))
    throw std::invalid_argument("channel: total path power must be > 0");
}

Eigen::MatrixXcd channel_matrix(const ClusterChannel& ch) {
  validate_channel(ch);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(ch.r, ch.t);
  for (const auto& path : ch.paths) {
    const Eigen::VectorXcd a_rx = ula_steering(path.aoa_deg, ch.r);
    const Eigen::VectorXcd a_tx = ula_steering(path.aod_deg, ch.t);
    H.noalias() += path.gain * a_rx * a_tx.adjoint();
  }
  return H;
}

PowerMap make_power_map(Eigen::MatrixXd values) {
  if (values.rows() < 1 || values.cols() < 1)
    throw std::invalid_argument("power map: must be nonempty");
  // The negated form also rejects NaN.
  if (!(values.array() >= 0.0).all() || !values.allFinite())
    throw std::invalid_argument("power map: entries must be finite and >= 0");
  return PowerMap{std::move(values)};
}

PowerMap power_map(const Eigen::MatrixXcd& H, const SteeringCodebook& F,
                   const SteeringCodebook& W) {
  if (F.n_elems != H.cols())
    throw std::invalid_argument("power_map: TX codebook/channel size mismatch");
  if (W.n_elems != H.rows())
    throw std::invalid_argument("power_map: RX codebook/channel size mismatch");

  const int p = F.size();
  const int q = W.size();
  Eigen::MatrixXcd Fmat(F.n_elems, p);
  for (int i = 0; i < p; ++i) Fmat.col(i) = F.vectors[i];
  Eigen::MatrixXcd Wmat(W.n_elems, q);
  for (int j = 0; j < q; ++j) Wmat.col(j) = W.vectors[j];

  const Eigen::MatrixXcd projected = Wmat.adjoint() * H * Fmat;  // q x p
  return make_power_map(projected.cwiseAbs2());
}

PowerMap synth_power_map_direct(Rng& rng, int p, int q, int n_clusters,
                                double dynamic_range_db, double floor_db) {
  if (p < 1 || q < 1)
    throw std::invalid_argument("synth map: p and q must be >= 1");
  if (n_clusters < 1)
    throw std::invalid_argument("synth map: n_clusters must be >= 1");
  if (!(dynamic_range_db > 0.0))
    throw std::invalid_argument("synth map: dynamic_range_db must be > 0");

  struct Blob {
    double amp_linear;
    int center_rx, center_tx;
    double sigma_rx, sigma_tx;
  };
  std::vector<Blob> blobs;
  blobs.reserve(n_clusters);

  auto draw_sigma = [&rng](int dim) {
    const double hi = std::max(1.6, 0.10 * dim);
    return rng.uniform(1.5, hi);
  };

  // Dominant cluster peaks at 0 dB somewhere in the central half of the grid.
  {
    Blob b;
    b.center_rx = q == 1 ? 0
                         : static_cast<int>(q / 4 + rng.uniform_index(
                                                        std::max(1, q / 2)));
    b.center_tx = p == 1 ? 0
                         : static_cast<int>(p / 4 + rng.uniform_index(
                                                        std::max(1, p / 2)));
    b.sigma_rx = draw_sigma(q);
    b.sigma_tx = draw_sigma(p);
    b.amp_linear = 1.0;
    blobs.push_back(b);
  }
  for (int c = 1; c < n_clusters; ++c) {
    Blob b;
    b.center_rx = static_cast<int>(rng.uniform_index(q));
    b.center_tx = static_cast<int>(rng.uniform_index(p));
    b.sigma_rx = draw_sigma(q);
    b.sigma_tx = draw_sigma(p);
    const double gap_db =
        rng.uniform(dynamic_range_db / 3.0, dynamic_range_db);
    b.amp_linear = std::pow(10.0, -gap_db / 10.0);
    blobs.push_back(b);
  }

  const double floor_linear =
      std::isinf(floor_db) ? 0.0 : std::pow(10.0, floor_db / 10.0);

  Eigen::MatrixXd values(q, p);
  for (int j = 0; j < q; ++j) {
    for (int i = 0; i < p; ++i) {
      double v = floor_linear;
      for (const Blob& b : blobs) {
        const double drx = (j - b.center_rx) / b.sigma_rx;
        const double dtx = (i - b.center_tx) / b.sigma_tx;
        v += b.amp_linear * std::exp(-0.5 * (drx * drx + dtx * dtx));
      }
      values(j, i) = v;
    }
  }
  return make_power_map(std::move(values));
}

}  // namespace cbalign
