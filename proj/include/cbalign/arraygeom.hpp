// SPDX-License-Identifier: Apache-2.0

#ifndef CBALIGN_ARRAYGEOM_HPP
#define CBALIGN_ARRAYGEOM_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace cbalign {

// Ordered set of unit-norm beamforming vectors with their steering angles.
// Immutable after construction; safe to share across concurrent trials.
struct SteeringCodebook {
  std::vector<Eigen::VectorXcd> vectors;  // each of length n_elems, unit norm
  std::vector<double> angles_deg;         // strictly increasing
  int n_elems = 0;

  int size() const { return static_cast<int>(vectors.size()); }
};

// Throws std::invalid_argument if any codebook invariant is violated:
// at least one entry, matching lengths, strictly increasing angles,
// unit-norm vectors within 1e-12.
void validate_codebook(const SteeringCodebook& cb);

// Half-wavelength uniform linear array steering vector: element k equals
// exp(i*pi*k*sin(theta)) / sqrt(n_elems). theta_deg must lie in [-90, 90].
Eigen::VectorXcd ula_steering(double theta_deg, int n_elems);

// Codebook with angles start, start+step, ..., not exceeding stop.
// Angles outside [-90, 90] are admitted here (they model a mechanically
// rotated array and alias onto the visible region of the ULA response).
SteeringCodebook build_uniform_codebook(double start_deg, double stop_deg,
                                        double step_deg, int n_elems);

// CSV schema: header "angle_deg,re_0,im_0,re_1,im_1,...", one row per beam,
// decimal text, UTF-8, LF line endings. n_elems is inferred from the column
// count. Rows whose vector norm deviates from 1 by less than 1e-6 are
// re-normalized; larger deviations are a load error naming the line.
SteeringCodebook load_codebook(const std::string& path);
void save_codebook(const SteeringCodebook& cb, const std::string& path);

}  // namespace cbalign

#endif  // CBALIGN_ARRAYGEOM_HPP
