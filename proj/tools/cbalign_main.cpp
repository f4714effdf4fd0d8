// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cbalign/app.hpp"

namespace {

struct CliOverrides {
  std::string config_path;
  std::string fractions;
  std::string out_dir;
  std::string grid;
  bool db_flag = false;
  long long seed = -1;
  int trials = -1;
  double noise_sigma = -1.0;
  double kappa = -1.0;
};

void add_common_flags(CLI::App* cmd, CliOverrides& ov) {
  cmd->add_option("--config", ov.config_path, "flat key=value config file");
  cmd->add_option("--seed", ov.seed, "base seed");
  cmd->add_option("--fractions", ov.fractions,
                  "comma list of fractions or m1xm2 pairs");
  cmd->add_option("--trials", ov.trials, "Monte Carlo trials per fraction");
  cmd->add_option("--noise-sigma", ov.noise_sigma,
                  "additive measurement noise std");
  cmd->add_option("--kappa", ov.kappa, "penalty factor of the null threshold");
  cmd->add_flag("--db", ov.db_flag, "grid CSV values are dBm, not linear");
  cmd->add_option("--out", ov.out_dir, "output directory");
}

// Config file first, then command-line overrides on top.
cbalign::RunConfig assemble(const CliOverrides& ov) {
  cbalign::RunConfig cfg;
  if (!ov.config_path.empty())
    cbalign::apply_config_file(cfg, ov.config_path);
  if (ov.seed >= 0) cbalign::apply_key(cfg, "seed", std::to_string(ov.seed));
  if (!ov.fractions.empty()) cbalign::apply_key(cfg, "fractions", ov.fractions);
  if (ov.trials >= 0) cbalign::apply_key(cfg, "trials", std::to_string(ov.trials));
  if (ov.noise_sigma >= 0.0)
    cfg.noise_sigma = ov.noise_sigma;
  if (ov.kappa >= 0.0) cfg.kappa = ov.kappa;
  if (ov.db_flag) cfg.grid_db = true;
  if (!ov.out_dir.empty()) cfg.out_dir = ov.out_dir;
  if (!ov.grid.empty()) {
    cfg.grid_csv = ov.grid;
    if (cfg.map_source == "direct" || cfg.map_source == "rays")
      cfg.map_source = "csv";
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cbalign - compressive beam alignment for mm-wave phased arrays\n"
      "Samples a random subset of beam-pair power measurements, recovers the\n"
      "full angular power map by DCT-domain sparse reconstruction, selects\n"
      "the best beam pair and benchmarks it against exhaustive search.\n\n" +
      cbalign::config_help()};
  app.require_subcommand(1);

  CliOverrides ov;

  CLI::App* synth = app.add_subcommand(
      "synth", "generate a ground-truth power map (CSV + PGM heatmap)");
  add_common_flags(synth, ov);

  CLI::App* run = app.add_subcommand(
      "run", "run the Monte Carlo alignment benchmark");
  add_common_flags(run, ov);
  run->add_option("--grid", ov.grid, "measured power grid CSV to align on");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "alias for a multi-fraction run");
  add_common_flags(sweep, ov);
  sweep->add_option("--grid", ov.grid, "measured power grid CSV to align on");

  CLI::App* ingest = app.add_subcommand(
      "ingest-check", "validate a measured power grid CSV");
  add_common_flags(ingest, ov);
  ingest->add_option("grid", ov.grid, "power grid CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  cbalign::RunConfig cfg;
  try {
    cfg = assemble(ov);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  if (synth->parsed()) return cbalign::cmd_synth(cfg);
  if (run->parsed() || sweep->parsed()) return cbalign::cmd_run(cfg);
  if (ingest->parsed()) return cbalign::cmd_ingest_check(cfg);
  return 1;
}
