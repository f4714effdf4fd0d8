// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <limits>

#include "cbalign/align.hpp"

using namespace cbalign;

namespace {

PowerMap map_from(std::initializer_list<std::initializer_list<double>> rows) {
  const int q = static_cast<int>(rows.size());
  const int p = static_cast<int>(rows.begin()->size());
  Eigen::MatrixXd values(q, p);
  int j = 0;
  for (const auto& row : rows) {
    int i = 0;
    for (double v : row) values(j, i++) = v;
    ++j;
  }
  return make_power_map(std::move(values));
}

PowerMap random_map(Rng& rng, int q, int p) {
  Eigen::MatrixXd values(q, p);
  for (int j = 0; j < q; ++j)
    for (int i = 0; i < p; ++i) values(j, i) = rng.uniform(0.0, 2.0);
  return make_power_map(std::move(values));
}

BeamChoice brute_force_argmax(const PowerMap& map) {
  BeamChoice best{0, 0, map.values(0, 0)};
  for (int j = 0; j < map.q(); ++j)
    for (int i = 0; i < map.p(); ++i)
      if (map.values(j, i) > best.value_linear)
        best = {i, j, map.values(j, i)};
  return best;
}

}  // namespace

TEST_CASE("select_best picks the maximum cell") {
  const PowerMap map = map_from({{1, 2}, {3, 0}});
  const BeamChoice best = select_best(map);
  CHECK(best.rx_idx == 1);
  CHECK(best.tx_idx == 0);
  CHECK(best.value_linear == 3.0);
}

TEST_CASE("ties break to the lowest rx then tx index") {
  const PowerMap constant = map_from({{1, 1}, {1, 1}});
  const BeamChoice best = select_best(constant);
  CHECK(best.rx_idx == 0);
  CHECK(best.tx_idx == 0);

  const PowerMap tie = map_from({{0, 5}, {5, 0}});
  const BeamChoice t = select_best(tie);
  CHECK(t.rx_idx == 0);
  CHECK(t.tx_idx == 1);
}

TEST_CASE("select_best agrees with brute force on random maps") {
  Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    PowerMap map = random_map(rng, 36, 19);
    if (trial % 3 == 0) {
      // Plant a duplicated maximum to exercise the tie rule.
      const int j = static_cast<int>(rng.uniform_index(36));
      const int i = static_cast<int>(rng.uniform_index(19));
      const int j2 = static_cast<int>(rng.uniform_index(36));
      const int i2 = static_cast<int>(rng.uniform_index(19));
      map.values(j, i) = 10.0;
      map.values(j2, i2) = 10.0;
    }
    const BeamChoice got = select_best(map);
    const BeamChoice want = brute_force_argmax(map);
    CHECK(got.rx_idx == want.rx_idx);
    CHECK(got.tx_idx == want.tx_idx);
  }
}

TEST_CASE("exhaustive_search is select_best on the true map") {
  Rng rng(52);
  const PowerMap map = random_map(rng, 12, 9);
  const BeamChoice a = exhaustive_search(map);
  const BeamChoice b = select_best(map);
  CHECK(a.rx_idx == b.rx_idx);
  CHECK(a.tx_idx == b.tx_idx);

  PowerMap scaled = map;
  scaled.values *= 17.5;
  const BeamChoice c = exhaustive_search(scaled);
  CHECK(c.rx_idx == a.rx_idx);
  CHECK(c.tx_idx == a.tx_idx);
}

TEST_CASE("nmse definition") {
  const PowerMap truth = map_from({{1, 2}, {3, 4}});
  CHECK(nmse(truth, truth) == 0.0);
  const PowerMap zero = map_from({{0, 0}, {0, 0}});
  CHECK(nmse(truth, zero) == 1.0);

  const PowerMap noisy = map_from({{1.5, 2}, {3, 3}});
  // ||E||^2 = 0.25 + 1 = 1.25, ||Phi||^2 = 30.
  CHECK(nmse(truth, noisy) == doctest::Approx(1.25 / 30.0).epsilon(1e-14));

  CHECK_THROWS_AS(nmse(zero, truth), std::invalid_argument);
  CHECK_THROWS_AS(nmse(truth, map_from({{1, 2, 3}})), std::invalid_argument);
}

TEST_CASE("rss_loss_db definition") {
  const PowerMap truth = map_from({{10, 5}, {1, 0}});
  const BeamChoice oracle = exhaustive_search(truth);
  CHECK(rss_loss_db(truth, oracle) == 0.0);

  const BeamChoice half{1, 0, 5.0};  // tx=1, rx=0 holds power 5
  CHECK(rss_loss_db(truth, half) ==
        doctest::Approx(10.0 * std::log10(2.0)).epsilon(1e-12));

  PowerMap scaled = truth;
  scaled.values *= 42.0;
  CHECK(rss_loss_db(scaled, half) ==
        doctest::Approx(10.0 * std::log10(2.0)).epsilon(1e-12));

  const BeamChoice dead{1, 1, 0.0};  // true power at (rx=1, tx=1) is 0
  CHECK(std::isinf(rss_loss_db(truth, dead)));
}

TEST_CASE("full-information trial recovers the map exactly") {
  Rng rng(53);
  const PowerMap phi = synth_power_map_direct(rng, 6, 8, 2, 25.0, -30.0);
  SolverSettings settings;
  settings.kappa = 0.0;
  const TrialReport report =
      run_trial(phi, 6, 8, 6, 8, 0.0, settings, 99);
  CHECK(report.fraction == 1.0);
  CHECK(report.nmse < 1e-10);
  CHECK(report.rss_loss_db == 0.0);
  CHECK(report.exact_hit);
  CHECK(report.converged);
}

TEST_CASE("vector-1d basis drives the pipeline to the same exact limit") {
  Rng rng(60);
  const PowerMap phi = synth_power_map_direct(rng, 6, 8, 2, 25.0, -30.0);
  SolverSettings settings;
  settings.kappa = 0.0;
  settings.dct_1d = true;
  const TrialReport report = run_trial(phi, 6, 8, 6, 8, 0.0, settings, 11);
  CHECK(report.nmse < 1e-10);
  CHECK(report.rss_loss_db == 0.0);

  // Subsampled 1D-mode recovery stays usable as well.
  const TrialReport partial = run_trial(phi, 6, 8, 4, 6, 0.0, settings, 12);
  CHECK(partial.nmse < 1.0);
}

TEST_CASE("trials are deterministic given the seed") {
  Rng rng(54);
  const PowerMap phi = synth_power_map_direct(rng, 10, 12, 2, 25.0, -30.0);
  SolverSettings settings;
  const TrialReport a = run_trial(phi, 10, 12, 5, 6, 0.01, settings, 1234);
  const TrialReport b = run_trial(phi, 10, 12, 5, 6, 0.01, settings, 1234);
  CHECK(a.nmse == b.nmse);
  CHECK(a.rss_loss_db == b.rss_loss_db);
  CHECK(a.iters_used == b.iters_used);
  CHECK(a.exact_hit == b.exact_hit);
}

TEST_CASE("trial reports the exact 0.25 fraction for the (9,19) split") {
  Rng rng(55);
  const PowerMap phi = synth_power_map_direct(rng, 19, 36, 2, 30.0, -40.0);
  SolverSettings settings;
  settings.max_iters = 200;  // fraction bookkeeping only
  const TrialReport report =
      run_trial(phi, 19, 36, 9, 19, 0.0, settings, 7);
  CHECK(report.fraction == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(report.m1 == 9);
  CHECK(report.m2 == 19);
}

TEST_CASE("run_trial attaches trial context to solver errors") {
  Rng rng(56);
  const PowerMap phi = random_map(rng, 6, 5);
  SolverSettings settings;
  settings.step = 2.0;  // invalid on purpose
  try {
    run_trial(phi, 5, 6, 3, 3, 0.0, settings, 4242);
    FAIL("expected a runtime_error");
  } catch (const std::runtime_error& e) {
    const std::string what = e.what();
    CHECK(what.find("4242") != std::string::npos);
  }
}

TEST_CASE("monte_carlo with one trial equals the single report") {
  Rng rng(57);
  const PowerMap phi = synth_power_map_direct(rng, 10, 12, 2, 25.0, -30.0);
  SolverSettings settings;
  const std::uint64_t base = 900;
  const auto rows = monte_carlo(phi, {{5, 6}}, 1, 0.0, settings, base);
  REQUIRE(rows.size() == 1);
  const TrialReport single =
      run_trial(phi, 10, 12, 5, 6, 0.0, settings, base);
  CHECK(rows[0].mean_nmse == single.nmse);
  CHECK(rows[0].mean_rss_loss_db == single.rss_loss_db);
  CHECK(rows[0].hit_rate == (single.exact_hit ? 1.0 : 0.0));
  CHECK(rows[0].trials == 1);
}

TEST_CASE("monte_carlo is deterministic and sorted by fraction") {
  Rng rng(58);
  const PowerMap phi = synth_power_map_direct(rng, 8, 10, 2, 25.0, -30.0);
  SolverSettings settings;
  const std::vector<std::pair<int, int>> splits = {{6, 8}, {2, 3}, {4, 5}};
  const auto a = monte_carlo(phi, splits, 3, 0.0, settings, 77);
  const auto b = monte_carlo(phi, splits, 3, 0.0, settings, 77);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].mean_nmse == b[i].mean_nmse);
    CHECK(a[i].mean_rss_loss_db == b[i].mean_rss_loss_db);
    if (i > 0) CHECK(a[i].fraction >= a[i - 1].fraction);
  }
}

TEST_CASE("monte_carlo observer sees every trial in order") {
  Rng rng(59);
  const PowerMap phi = synth_power_map_direct(rng, 8, 10, 2, 25.0, -30.0);
  SolverSettings settings;
  int calls = 0;
  std::vector<std::pair<std::size_t, int>> order;
  monte_carlo(phi, {{4, 5}, {6, 8}}, 2, 0.0, settings, 5,
              [&](std::size_t point, int trial, const TrialReport& r,
                  const RecoveryResult& recovery) {
                ++calls;
                order.emplace_back(point, trial);
                CHECK(recovery.phi_hat.rows() == 10);
                CHECK(r.seed == 5 + point * 2 + trial);
              });
  CHECK(calls == 4);
  CHECK(order == std::vector<std::pair<std::size_t, int>>{
                     {0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

TEST_CASE("balanced_split resolves the documented pairs") {
  CHECK(balanced_split(19, 36, 0.25) == std::pair{9, 19});
  CHECK(balanced_split(19, 36, 0.37) == std::pair{11, 23});
  CHECK(balanced_split(19, 36, 0.47) == std::pair{14, 23});
  CHECK(balanced_split(19, 36, 1.0) == std::pair{19, 36});
  CHECK_THROWS_AS(balanced_split(19, 36, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(balanced_split(19, 36, 1.5), std::invalid_argument);
}
