// SPDX-License-Identifier: Apache-2.0

#include "cbalign/arraygeom.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cbalign {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

Eigen::VectorXcd ula_vector_unchecked(double theta_deg, int n_elems) {
  Eigen::VectorXcd v(n_elems);
  const double s = std::sin(theta_deg * kDegToRad);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n_elems));
  for (int k = 0; k < n_elems; ++k) {
    const double phase = M_PI * static_cast<double>(k) * s;
    v(k) = std::polar(amp, phase);
  }
  return v;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

void validate_codebook(const SteeringCodebook& cb) {
  if (cb.vectors.empty())
    throw std::invalid_argument("codebook: must contain at least one beam");
  if (cb.vectors.size() != cb.angles_deg.size())
    throw std::invalid_argument("codebook: vectors/angles length mismatch");
  if (cb.n_elems < 1)
    throw std::invalid_argument("codebook: n_elems must be >= 1");
  for (std::size_t i = 0; i < cb.vectors.size(); ++i) {
    if (cb.vectors[i].size() != cb.n_elems)
      throw std::invalid_argument("codebook: vector length != n_elems at beam " +
                                  std::to_string(i));
    if (std::abs(cb.vectors[i].norm() - 1.0) > 1e-12)
      throw std::invalid_argument("codebook: beam " + std::to_string(i) +
                                  " is not unit norm");
    if (i > 0 && !(cb.angles_deg[i] > cb.angles_deg[i - 1]))
      throw std::invalid_argument(
          "codebook: angles_deg must be strictly increasing");
  }
}

Eigen::VectorXcd ula_steering(double theta_deg, int n_elems) {
  if (n_elems < 1)
    throw std::invalid_argument("ula_steering: n_elems must be >= 1");
  if (!(theta_deg >= -90.0 && theta_deg <= 90.0))
    throw std::invalid_argument("ula_steering: angle " + fmt(theta_deg) +
                                " outside [-90, 90] degrees");
  return ula_vector_unchecked(theta_deg, n_elems);
}

SteeringCodebook build_uniform_codebook(double start_deg, double stop_deg,
                                        double step_deg, int n_elems) {
  if (!(step_deg > 0.0))
    throw std::invalid_argument("build_uniform_codebook: step must be > 0");
  if (start_deg > stop_deg)
    throw std::invalid_argument("build_uniform_codebook: start > stop");
  if (n_elems < 1)
    throw std::invalid_argument("build_uniform_codebook: n_elems must be >= 1");

  // Entry count from the span; the epsilon absorbs representation error in
  // (stop-start)/step so that e.g. -45..45 step 5 yields exactly 19 angles.
  const int count =
      1 + static_cast<int>(std::floor((stop_deg - start_deg) / step_deg +
                                      1e-9));
  SteeringCodebook cb;
  cb.n_elems = n_elems;
  cb.vectors.reserve(count);
  cb.angles_deg.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double angle = start_deg + step_deg * k;
    cb.angles_deg.push_back(angle);
    cb.vectors.push_back(ula_vector_unchecked(angle, n_elems));
  }
  validate_codebook(cb);
  return cb;
}

void save_codebook(const SteeringCodebook& cb, const std::string& path) {
  validate_codebook(cb);
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("save_codebook: cannot open " + path);
  out << "angle_deg";
  for (int k = 0; k < cb.n_elems; ++k)
    out << ",re_" << k << ",im_" << k;
  out << "\n";
  for (int b = 0; b < cb.size(); ++b) {
    out << fmt(cb.angles_deg[b]);
    for (int k = 0; k < cb.n_elems; ++k) {
      out << "," << fmt(cb.vectors[b](k).real()) << ","
          << fmt(cb.vectors[b](k).imag());
    }
    out << "\n";
  }
  if (!out)
    throw std::runtime_error("save_codebook: write failed for " + path);
}

SteeringCodebook load_codebook(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("load_codebook: cannot open " + path);

  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("load_codebook: " + path + ": empty file");

  SteeringCodebook cb;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::vector<double> fields;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t pos = 0;
        fields.push_back(std::stod(tok, &pos));
        if (pos != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw std::runtime_error("load_codebook: " + path + ": line " +
                                 std::to_string(line_no) +
                                 ": malformed number '" + tok + "'");
      }
    }
    if (fields.size() < 3 || fields.size() % 2 == 0)
      throw std::runtime_error("load_codebook: " + path + ": line " +
                               std::to_string(line_no) +
                               ": expected angle followed by re/im pairs");

    const int n_elems = static_cast<int>((fields.size() - 1) / 2);
    if (cb.n_elems == 0) cb.n_elems = n_elems;
    if (n_elems != cb.n_elems)
      throw std::runtime_error("load_codebook: " + path + ": line " +
                               std::to_string(line_no) +
                               ": inconsistent element count");

    Eigen::VectorXcd v(n_elems);
    for (int k = 0; k < n_elems; ++k)
      v(k) = std::complex<double>(fields[1 + 2 * k], fields[2 + 2 * k]);

    const double norm = v.norm();
    if (std::abs(norm - 1.0) >= 1e-6)
      throw std::runtime_error("load_codebook: " + path + ": line " +
                               std::to_string(line_no) + ": vector norm " +
                               fmt(norm) + " deviates from 1 by >= 1e-6");
    v /= norm;

    cb.angles_deg.push_back(fields[0]);
    cb.vectors.push_back(std::move(v));
  }
  try {
    validate_codebook(cb);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error("load_codebook: " + path + ": " + e.what());
  }
  return cb;
}

}  // namespace cbalign
