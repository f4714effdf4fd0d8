// SPDX-License-Identifier: Apache-2.0

#include "cbalign/app.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cbalign/gridio.hpp"
#include "cbalign/lasso.hpp"
#include "cbalign/rng.hpp"
#include "cbalign/sensing.hpp"

namespace fs = std::filesystem;

namespace cbalign {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for " + key + ": '" +
                                value + "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for " + key + ": '" +
                                value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "no") return false;
  throw std::invalid_argument("config: bad boolean for " + key + ": '" +
                              value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["tx_codebook"] = cfg.tx_codebook_csv;
  j["rx_codebook"] = cfg.rx_codebook_csv;
  j["tx_start_deg"] = cfg.tx_start_deg;
  j["tx_stop_deg"] = cfg.tx_stop_deg;
  j["tx_step_deg"] = cfg.tx_step_deg;
  j["tx_elems"] = cfg.tx_elems;
  j["rx_start_deg"] = cfg.rx_start_deg;
  j["rx_stop_deg"] = cfg.rx_stop_deg;
  j["rx_step_deg"] = cfg.rx_step_deg;
  j["rx_elems"] = cfg.rx_elems;
  j["map_source"] = cfg.map_source;
  j["grid_csv"] = cfg.grid_csv;
  j["grid_db"] = cfg.grid_db;
  j["clusters"] = cfg.clusters;
  j["dynamic_range_db"] = cfg.dynamic_range_db;
  j["floor_db"] = cfg.floor_db;
  j["fractions"] = cfg.fractions;
  j["trials"] = cfg.trials;
  j["noise_sigma"] = cfg.noise_sigma;
  j["kappa"] = cfg.kappa;
  j["max_iters"] = cfg.max_iters;
  j["tol"] = cfg.tol;
  j["step"] = cfg.step;
  j["dct_mode"] = cfg.dct_mode;
  j["seed"] = cfg.seed;
  j["out"] = cfg.out_dir;
  return j;
}

void write_manifest(const RunConfig& cfg, const std::string& command,
                    const std::vector<std::string>& artifacts) {
  nlohmann::json j;
  j["command"] = command;
  j["config"] = config_json(cfg);
  nlohmann::json hashes;
  for (const std::string& name : artifacts) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(
                      fnv1a_file((fs::path(cfg.out_dir) / name).string())));
    hashes[name] = buf;
  }
  j["artifacts"] = hashes;
  std::ofstream out(fs::path(cfg.out_dir) / "manifest.json",
                    std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest.json");
  out << j.dump(2) << "\n";
}

SolverSettings solver_settings(const RunConfig& cfg) {
  SolverSettings s;
  s.kappa = cfg.kappa;
  s.max_iters = cfg.max_iters;
  s.tol = cfg.tol;
  s.step = cfg.step;
  s.dct_1d = cfg.dct_mode == "vector-1d";
  return s;
}

void ensure_out_dir(const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory " + cfg.out_dir +
                             ": " + ec.message());
}

constexpr std::uint64_t kTrialSeedOffset = 1000000;

}  // namespace

void apply_key(RunConfig& cfg, const std::string& key,
               const std::string& value) {
  if (key == "tx_codebook") cfg.tx_codebook_csv = value;
  else if (key == "rx_codebook") cfg.rx_codebook_csv = value;
  else if (key == "tx_start_deg") cfg.tx_start_deg = parse_double(key, value);
  else if (key == "tx_stop_deg") cfg.tx_stop_deg = parse_double(key, value);
  else if (key == "tx_step_deg") cfg.tx_step_deg = parse_double(key, value);
  else if (key == "tx_elems") cfg.tx_elems = static_cast<int>(parse_int(key, value));
  else if (key == "rx_start_deg") cfg.rx_start_deg = parse_double(key, value);
  else if (key == "rx_stop_deg") cfg.rx_stop_deg = parse_double(key, value);
  else if (key == "rx_step_deg") cfg.rx_step_deg = parse_double(key, value);
  else if (key == "rx_elems") cfg.rx_elems = static_cast<int>(parse_int(key, value));
  else if (key == "map_source") cfg.map_source = value;
  else if (key == "grid_csv") cfg.grid_csv = value;
  else if (key == "grid_db") cfg.grid_db = parse_bool(key, value);
  else if (key == "clusters") cfg.clusters = static_cast<int>(parse_int(key, value));
  else if (key == "dynamic_range_db") cfg.dynamic_range_db = parse_double(key, value);
  else if (key == "floor_db") cfg.floor_db = parse_double(key, value);
  else if (key == "fractions") cfg.fractions = split_list(value);
  else if (key == "trials") cfg.trials = static_cast<int>(parse_int(key, value));
  else if (key == "noise_sigma") cfg.noise_sigma = parse_double(key, value);
  else if (key == "kappa") cfg.kappa = parse_double(key, value);
  else if (key == "max_iters") cfg.max_iters = static_cast<int>(parse_int(key, value));
  else if (key == "tol") cfg.tol = parse_double(key, value);
  else if (key == "step") cfg.step = parse_double(key, value);
  else if (key == "dct_mode") cfg.dct_mode = value;
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
  else if (key == "out") cfg.out_dir = value;
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: " + path + ": line " +
                                  std::to_string(line_no) +
                                  ": expected key = value");
    apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void validate_config(const RunConfig& cfg) {
  for (const std::string& path : {cfg.tx_codebook_csv, cfg.rx_codebook_csv}) {
    if (!path.empty() && !fs::exists(path))
      throw std::invalid_argument("config: codebook file not found: " + path);
  }
  if (cfg.map_source != "direct" && cfg.map_source != "rays" &&
      cfg.map_source != "csv")
    throw std::invalid_argument("config: map_source must be direct|rays|csv");
  if (cfg.map_source == "csv") {
    if (cfg.grid_csv.empty())
      throw std::invalid_argument("config: map_source=csv requires grid_csv");
    if (!fs::exists(cfg.grid_csv))
      throw std::invalid_argument("config: grid file not found: " +
                                  cfg.grid_csv);
  }
  if (cfg.dct_mode != "separable-2d" && cfg.dct_mode != "vector-1d")
    throw std::invalid_argument(
        "config: dct_mode must be separable-2d|vector-1d");
  if (cfg.trials < 1)
    throw std::invalid_argument("config: trials must be >= 1");
  if (cfg.noise_sigma < 0.0)
    throw std::invalid_argument("config: noise_sigma must be >= 0");
  if (cfg.kappa < 0.0)
    throw std::invalid_argument("config: kappa must be >= 0");
  if (cfg.fractions.empty())
    throw std::invalid_argument("config: fractions must be nonempty");
  if (cfg.clusters < 1)
    throw std::invalid_argument("config: clusters must be >= 1");
}

std::string config_help() {
  return
      "Config file keys (key = value, '#' comments), also settable via flags:\n"
      "  tx_codebook, rx_codebook     codebook CSV paths (default: synthetic)\n"
      "  tx_start_deg, tx_stop_deg, tx_step_deg, tx_elems   TX grid (-45..45 step 5, 16)\n"
      "  rx_start_deg, rx_stop_deg, rx_step_deg, rx_elems   RX grid (-180..170 step 10, 16)\n"
      "  map_source                   direct | rays | csv (default direct)\n"
      "  grid_csv, grid_db            measured-grid CSV path and dBm flag\n"
      "  clusters                     cluster/path count for synthetic maps (2)\n"
      "  dynamic_range_db             dominant-to-weak cluster range in dB (30)\n"
      "  floor_db                     uniform floor relative to the peak (-40)\n"
      "  fractions                    list of fractions or m1xm2 pairs (0.25,0.37,0.47)\n"
      "  trials                       Monte Carlo trials per fraction (200)\n"
      "  noise_sigma                  additive measurement noise std (0)\n"
      "  kappa                        penalty factor of the null threshold (0.05)\n"
      "  max_iters, tol, step         solver limits (5000, 1e-8, auto)\n"
      "  dct_mode                     separable-2d | vector-1d\n"
      "  seed                         base seed (1)\n"
      "  out                          output directory (out)\n";
}

SteeringCodebook build_tx_codebook(const RunConfig& cfg) {
  if (!cfg.tx_codebook_csv.empty()) return load_codebook(cfg.tx_codebook_csv);
  return build_uniform_codebook(cfg.tx_start_deg, cfg.tx_stop_deg,
                                cfg.tx_step_deg, cfg.tx_elems);
}

SteeringCodebook build_rx_codebook(const RunConfig& cfg) {
  if (!cfg.rx_codebook_csv.empty()) return load_codebook(cfg.rx_codebook_csv);
  return build_uniform_codebook(cfg.rx_start_deg, cfg.rx_stop_deg,
                                cfg.rx_step_deg, cfg.rx_elems);
}

PowerMap build_ground_truth(const RunConfig& cfg, int p, int q) {
  if (cfg.map_source == "csv") return ingest_grid(cfg.grid_csv, cfg.grid_db);

  Rng rng(cfg.seed);
  if (cfg.map_source == "direct")
    return synth_power_map_direct(rng, p, q, cfg.clusters,
                                  cfg.dynamic_range_db, cfg.floor_db);

  // rays: geometric multipath channel projected through the codebooks.
  const SteeringCodebook F = build_tx_codebook(cfg);
  const SteeringCodebook W = build_rx_codebook(cfg);
  const double aod_lo = std::max(-90.0, F.angles_deg.front());
  const double aod_hi = std::min(90.0, F.angles_deg.back());
  const double aoa_lo = std::max(-90.0, W.angles_deg.front());
  const double aoa_hi = std::min(90.0, W.angles_deg.back());
  ClusterChannel ch;
  ch.t = F.n_elems;
  ch.r = W.n_elems;
  for (int l = 0; l < cfg.clusters; ++l) {
    PathComponent path;
    const double phase = rng.uniform(0.0, 2.0 * M_PI);
    double mag = 1.0;
    if (l > 0) {
      const double gap_db =
          rng.uniform(cfg.dynamic_range_db / 3.0, cfg.dynamic_range_db);
      mag = std::pow(10.0, -gap_db / 20.0);
    }
    path.gain = std::polar(mag, phase);
    path.aod_deg = rng.uniform(aod_lo, aod_hi);
    path.aoa_deg = rng.uniform(aoa_lo, aoa_hi);
    ch.paths.push_back(path);
  }
  return power_map(channel_matrix(ch), F, W);
}

std::vector<std::pair<int, int>> resolve_splits(const RunConfig& cfg, int p,
                                                int q) {
  std::vector<std::pair<int, int>> splits;
  for (const std::string& token : cfg.fractions) {
    const auto x = token.find('x');
    if (x != std::string::npos) {
      const int m1 = static_cast<int>(parse_int("fractions", token.substr(0, x)));
      const int m2 = static_cast<int>(parse_int("fractions", token.substr(x + 1)));
      if (m1 < 1 || m1 > p || m2 < 1 || m2 > q)
        throw std::invalid_argument("config: split " + token +
                                    " out of range for p=" + std::to_string(p) +
                                    ", q=" + std::to_string(q));
      splits.emplace_back(m1, m2);
    } else {
      const double fraction = parse_double("fractions", token);
      if (!(fraction > 0.0 && fraction <= 1.0))
        throw std::invalid_argument("config: fraction " + token +
                                    " outside (0, 1]");
      splits.push_back(balanced_split(p, q, fraction));
    }
  }
  return splits;
}

int cmd_synth(const RunConfig& cfg) {
  SteeringCodebook F, W;
  PowerMap phi;
  try {
    validate_config(cfg);
    F = build_tx_codebook(cfg);
    W = build_rx_codebook(cfg);
    phi = build_ground_truth(cfg, F.size(), W.size());
  } catch (const std::exception& e) {
    std::cerr << "synth: " << e.what() << "\n";
    return 1;
  }
  try {
    ensure_out_dir(cfg);
    export_power_map_csv(phi, (fs::path(cfg.out_dir) / "phi_true.csv").string());
    write_pgm_heatmap(phi.values,
                      (fs::path(cfg.out_dir) / "phi_true.pgm").string());
    write_manifest(cfg, "synth", {"phi_true.csv", "phi_true.pgm"});
  } catch (const std::exception& e) {
    std::cerr << "synth: " << e.what() << "\n";
    return 2;
  }
  std::cout << "synth: wrote " << cfg.out_dir << "/phi_true.csv ("
            << W.size() << "x" << F.size() << " grid) and phi_true.pgm\n";
  return 0;
}

int cmd_run(const RunConfig& cfg) {
  SteeringCodebook F, W;
  PowerMap phi;
  std::vector<std::pair<int, int>> splits;
  try {
    validate_config(cfg);
    F = build_tx_codebook(cfg);
    W = build_rx_codebook(cfg);
    phi = build_ground_truth(cfg, F.size(), W.size());
    if (phi.p() != F.size() || phi.q() != W.size())
      throw std::invalid_argument(
          "grid size " + std::to_string(phi.q()) + "x" +
          std::to_string(phi.p()) + " does not match codebooks " +
          std::to_string(W.size()) + "x" + std::to_string(F.size()));
    splits = resolve_splits(cfg, phi.p(), phi.q());
  } catch (const std::exception& e) {
    std::cerr << "run: " << e.what() << "\n";
    return 1;
  }

  try {
    ensure_out_dir(cfg);
    std::ofstream detail(fs::path(cfg.out_dir) / "trials.csv",
                         std::ios::binary);
    if (!detail) throw std::runtime_error("cannot write trials.csv");
    detail << "fraction,m1,m2,trial,seed,nmse,rss_loss_db,exact_hit,iters,"
              "converged,objective\n";

    std::vector<std::string> artifacts = {"aggregate.csv", "trials.csv"};
    const TrialObserver observer = [&](std::size_t point, int trial,
                                       const TrialReport& r,
                                       const RecoveryResult& recovery) {
      detail << format_double(r.fraction) << "," << r.m1 << "," << r.m2 << ","
             << trial << "," << r.seed << "," << format_double(r.nmse) << ","
             << format_double(r.rss_loss_db) << "," << (r.exact_hit ? 1 : 0)
             << "," << r.iters_used << "," << (r.converged ? 1 : 0) << ","
             << format_double(r.final_objective) << "\n";
      if (trial == 0) {
        const std::string name = "phi_hat_m" + std::to_string(r.m1) + "x" +
                                 std::to_string(r.m2) + ".pgm";
        write_pgm_heatmap(recovery.phi_hat.cwiseMax(0.0),
                          (fs::path(cfg.out_dir) / name).string());
        artifacts.push_back(name);
      }
      (void)point;
    };

    const std::vector<AggregateRow> rows =
        monte_carlo(phi, splits, cfg.trials, cfg.noise_sigma,
                    solver_settings(cfg), cfg.seed + kTrialSeedOffset,
                    observer);
    detail.close();
    if (!detail) throw std::runtime_error("write failed for trials.csv");

    std::ofstream agg(fs::path(cfg.out_dir) / "aggregate.csv",
                      std::ios::binary);
    if (!agg) throw std::runtime_error("cannot write aggregate.csv");
    agg << "fraction,m1,m2,mean_nmse,mean_rss_loss_db,hit_rate,trials,"
           "infinite_loss_count\n";
    for (const AggregateRow& row : rows) {
      agg << format_double(row.fraction) << "," << row.m1 << "," << row.m2
          << "," << format_double(row.mean_nmse) << ","
          << format_double(row.mean_rss_loss_db) << ","
          << format_double(row.hit_rate) << "," << row.trials << ","
          << row.infinite_loss_count << "\n";
    }
    agg.close();
    if (!agg) throw std::runtime_error("write failed for aggregate.csv");

    write_manifest(cfg, "run", artifacts);

    for (const AggregateRow& row : rows) {
      std::cout << "fraction " << format_double(row.fraction) << " (m1="
                << row.m1 << ", m2=" << row.m2
                << "): mean NMSE " << format_double(row.mean_nmse)
                << ", mean RSS loss " << format_double(row.mean_rss_loss_db)
                << " dB, hit rate " << format_double(row.hit_rate) << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "run: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int cmd_ingest_check(const RunConfig& cfg) {
  try {
    if (cfg.grid_csv.empty())
      throw std::invalid_argument("ingest-check: no grid CSV given");
    const PowerMap map = ingest_grid(cfg.grid_csv, cfg.grid_db);
    const BeamChoice best = select_best(map);
    std::cout << "grid ok: " << map.q() << " rx x " << map.p()
              << " tx, peak " << format_double(best.value_linear)
              << " at (rx=" << best.rx_idx << ", tx=" << best.tx_idx << ")\n";
  } catch (const std::exception& e) {
    std::cerr << "ingest-check: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace cbalign
