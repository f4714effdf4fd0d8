// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cbalign/arraygeom.hpp"
#include "cbalign/rng.hpp"

using namespace cbalign;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("cbalign_test_" + name);
}

}  // namespace

TEST_CASE("ula_steering broadside has constant real elements") {
  const Eigen::VectorXcd v = ula_steering(0.0, 4);
  REQUIRE(v.size() == 4);
  for (int k = 0; k < 4; ++k) {
    CHECK(v(k).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(v(k).imag() == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("ula_steering at 90 degrees flips the second element") {
  const Eigen::VectorXcd v = ula_steering(90.0, 2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(v(0).real() == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  CHECK(v(1).real() == doctest::Approx(-inv_sqrt2).epsilon(1e-12));
  CHECK(std::abs(v(1).imag()) < 1e-12);
}

TEST_CASE("ula_steering matches a per-element reference loop") {
  // Independent evaluation of exp(i*pi*k*sin(theta))/sqrt(n).
  const double theta = 30.0;
  const int n = 8;
  const Eigen::VectorXcd v = ula_steering(theta, n);
  const double s = std::sin(theta * M_PI / 180.0);
  for (int k = 0; k < n; ++k) {
    const std::complex<double> want =
        std::exp(std::complex<double>(0.0, M_PI * k * s)) / std::sqrt(8.0);
    CHECK(std::abs(v(k) - want) < 1e-14);
  }
  // Element 3 carries phase 3*pi*0.5, i.e. 4.71239 rad.
  const double phase = std::arg(v(3));
  const double expected = std::fmod(3.0 * M_PI * 0.5, 2.0 * M_PI) - 2.0 * M_PI;
  CHECK(phase == doctest::Approx(expected).epsilon(1e-12));
  CHECK(std::abs(v(3)) == doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-12));
}

TEST_CASE("ula_steering vectors are unit norm for random angles") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const double theta = rng.uniform(-90.0, 90.0);
    for (int n : {1, 4, 16}) {
      CHECK(std::abs(ula_steering(theta, n).norm() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("ula_steering rejects bad arguments") {
  CHECK_THROWS_AS(ula_steering(90.5, 4), std::invalid_argument);
  CHECK_THROWS_AS(ula_steering(-91.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(ula_steering(0.0, 0), std::invalid_argument);
}

TEST_CASE("build_uniform_codebook entry counts") {
  CHECK(build_uniform_codebook(-45, 45, 5, 16).size() == 19);
  CHECK(build_uniform_codebook(-180, 170, 10, 16).size() == 36);
  CHECK(build_uniform_codebook(-180, 170, 10, 4).size() == 36);
  const SteeringCodebook single = build_uniform_codebook(0, 0, 5, 4);
  CHECK(single.size() == 1);
  CHECK(single.angles_deg[0] == 0.0);
}

TEST_CASE("build_uniform_codebook rejects a non-positive step") {
  CHECK_THROWS_AS(build_uniform_codebook(-45, 45, 0, 8), std::invalid_argument);
  CHECK_THROWS_AS(build_uniform_codebook(-45, 45, -5, 8),
                  std::invalid_argument);
}

TEST_CASE("codebook save/load round trip preserves every entry") {
  const SteeringCodebook cb = build_uniform_codebook(-45, 45, 5, 16);
  const fs::path path = temp_file("codebook_roundtrip.csv");
  save_codebook(cb, path.string());
  const SteeringCodebook loaded = load_codebook(path.string());
  REQUIRE(loaded.size() == cb.size());
  REQUIRE(loaded.n_elems == cb.n_elems);
  for (int b = 0; b < cb.size(); ++b) {
    CHECK(loaded.angles_deg[b] == doctest::Approx(cb.angles_deg[b]).epsilon(1e-15));
    for (int k = 0; k < cb.n_elems; ++k)
      CHECK(std::abs(loaded.vectors[b](k) - cb.vectors[b](k)) < 1e-12);
  }
  fs::remove(path);
}

TEST_CASE("load_codebook parses a small file and infers n_elems") {
  const fs::path path = temp_file("codebook_small.csv");
  {
    std::ofstream out(path);
    const double a = 1.0 / std::sqrt(2.0);
    out << "angle_deg,re_0,im_0,re_1,im_1\n";
    out << "-45," << a << ",0," << a << ",0\n";
    out << "45," << a << ",0,0," << a << "\n";
  }
  const SteeringCodebook cb = load_codebook(path.string());
  CHECK(cb.size() == 2);
  CHECK(cb.n_elems == 2);
  CHECK(cb.angles_deg[0] == -45.0);
  fs::remove(path);
}

TEST_CASE("load_codebook names the offending line") {
  const fs::path path = temp_file("codebook_bad.csv");

  SUBCASE("zero vector row") {
    {
      std::ofstream out(path);
      out << "angle_deg,re_0,im_0\n";
      out << "0,0,0\n";
    }
    CHECK_THROWS_WITH_AS(load_codebook(path.string()),
                         doctest::Contains("line 2"), std::runtime_error);
  }
  SUBCASE("norm deviation at or above 1e-6") {
    {
      std::ofstream out(path);
      out << "angle_deg,re_0,im_0\n";
      out << "0,0.9,0\n";
    }
    CHECK_THROWS_AS(load_codebook(path.string()), std::runtime_error);
  }
  SUBCASE("small norm deviation is renormalized") {
    {
      std::ofstream out(path);
      out << "angle_deg,re_0,im_0\n";
      out << "0," << (1.0 + 1e-8) << ",0\n";
    }
    const SteeringCodebook cb = load_codebook(path.string());
    CHECK(std::abs(cb.vectors[0].norm() - 1.0) < 1e-12);
  }
  SUBCASE("non-increasing angles") {
    {
      std::ofstream out(path);
      out << "angle_deg,re_0,im_0\n";
      out << "10,1,0\n";
      out << "10,1,0\n";
    }
    CHECK_THROWS_AS(load_codebook(path.string()), std::runtime_error);
  }
  SUBCASE("malformed number") {
    {
      std::ofstream out(path);
      out << "angle_deg,re_0,im_0\n";
      out << "0,one,0\n";
    }
    CHECK_THROWS_WITH_AS(load_codebook(path.string()),
                         doctest::Contains("line 2"), std::runtime_error);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_codebook("/nonexistent/codebook.csv"),
                    std::runtime_error);
  }
  fs::remove(path);
}
