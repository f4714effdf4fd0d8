// SPDX-License-Identifier: Apache-2.0

#include "cbalign/gridio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cbalign {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void export_power_map_csv(const PowerMap& map, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("export_power_map_csv: cannot open " + path);
  out << "rx_idx,tx_idx,power_linear\n";
  for (int j = 0; j < map.q(); ++j)
    for (int i = 0; i < map.p(); ++i)
      out << j << "," << i << "," << format_double(map.values(j, i)) << "\n";
  if (!out)
    throw std::runtime_error("export_power_map_csv: write failed for " + path);
}

PowerMap ingest_grid(const std::string& path, bool values_in_db) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("ingest_grid: cannot open " + path);

  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("ingest_grid: " + path + ": empty file");

  struct Cell {
    int rx, tx;
    double value;
    int line_no;
  };
  std::vector<Cell> cells;
  int line_no = 1;
  int max_rx = -1, max_tx = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.back() == '\r') line.pop_back();
    std::stringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') ||
        !std::getline(ss, c))
      throw std::runtime_error("ingest_grid: " + path + ": line " +
                               std::to_string(line_no) + ": expected 3 fields");
    Cell cell;
    try {
      cell.rx = std::stoi(a);
      cell.tx = std::stoi(b);
      cell.value = std::stod(c);
    } catch (const std::exception&) {
      throw std::runtime_error("ingest_grid: " + path + ": line " +
                               std::to_string(line_no) + ": malformed row");
    }
    cell.line_no = line_no;
    if (cell.rx < 0 || cell.tx < 0)
      throw std::runtime_error("ingest_grid: " + path + ": line " +
                               std::to_string(line_no) + ": negative index");
    if (!std::isfinite(cell.value))
      throw std::runtime_error("ingest_grid: " + path + ": line " +
                               std::to_string(line_no) +
                               ": non-finite power value");
    if (values_in_db) {
      cell.value = std::pow(10.0, cell.value / 10.0);
    } else if (cell.value < 0.0) {
      throw std::runtime_error("ingest_grid: " + path + ": line " +
                               std::to_string(line_no) +
                               ": negative linear power");
    }
    max_rx = std::max(max_rx, cell.rx);
    max_tx = std::max(max_tx, cell.tx);
    cells.push_back(cell);
  }
  if (cells.empty())
    throw std::runtime_error("ingest_grid: " + path + ": no data rows");

  const int q = max_rx + 1;
  const int p = max_tx + 1;
  Eigen::MatrixXd values(q, p);
  Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic> seen_line =
      Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>::Zero(q, p);
  for (const Cell& cell : cells) {
    if (seen_line(cell.rx, cell.tx) != 0)
      throw std::runtime_error(
          "ingest_grid: " + path + ": line " + std::to_string(cell.line_no) +
          ": duplicate cell (rx=" + std::to_string(cell.rx) +
          ", tx=" + std::to_string(cell.tx) + "), first seen at line " +
          std::to_string(seen_line(cell.rx, cell.tx)));
    seen_line(cell.rx, cell.tx) = cell.line_no;
    values(cell.rx, cell.tx) = cell.value;
  }
  std::vector<std::string> missing;
  for (int j = 0; j < q; ++j)
    for (int i = 0; i < p; ++i)
      if (seen_line(j, i) == 0)
        missing.push_back("(rx=" + std::to_string(j) +
                          ", tx=" + std::to_string(i) + ")");
  if (!missing.empty()) {
    std::string list;
    for (std::size_t i = 0; i < std::min<std::size_t>(missing.size(), 8); ++i)
      list += (i ? ", " : "") + missing[i];
    if (missing.size() > 8)
      list += ", ... (" + std::to_string(missing.size()) + " total)";
    throw std::runtime_error("ingest_grid: " + path + ": missing cells " +
                             list);
  }
  return make_power_map(std::move(values));
}

void export_measurements_csv(const MeasurementSet& meas,
                             const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("export_measurements_csv: cannot open " + path);
  out << "rx_codebook_idx,tx_codebook_idx,power_linear\n";
  for (int k = 0; k < meas.plan.m2(); ++k)
    for (int l = 0; l < meas.plan.m1(); ++l)
      out << meas.plan.rx_indices[k] << "," << meas.plan.tx_indices[l] << ","
          << format_double(meas.Y(k, l)) << "\n";
  if (!out)
    throw std::runtime_error("export_measurements_csv: write failed for " +
                             path);
}

void write_pgm_heatmap(const Eigen::MatrixXd& values, const std::string& path,
                       double span_db) {
  if (values.size() == 0)
    throw std::invalid_argument("write_pgm_heatmap: empty map");
  if (!(span_db > 0.0))
    throw std::invalid_argument("write_pgm_heatmap: span_db must be > 0");

  const double peak = values.maxCoeff();
  const double peak_db = peak > 0.0 ? 10.0 * std::log10(peak) : 0.0;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_pgm_heatmap: cannot open " + path);
  out << "P2\n" << values.cols() << " " << values.rows() << "\n255\n";
  for (int j = 0; j < values.rows(); ++j) {
    for (int i = 0; i < values.cols(); ++i) {
      int pixel = 0;
      const double v = values(j, i);
      if (v > 0.0 && peak > 0.0) {
        const double rel = (10.0 * std::log10(v) - (peak_db - span_db)) /
                           span_db;
        pixel = static_cast<int>(std::lround(
            255.0 * std::clamp(rel, 0.0, 1.0)));
      }
      out << pixel << (i + 1 < values.cols() ? ' ' : '\n');
    }
  }
  if (!out)
    throw std::runtime_error("write_pgm_heatmap: write failed for " + path);
}

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("fnv1a_file: cannot open " + path);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ULL;
    }
    if (in.eof()) break;
  }
  return hash;
}

}  // namespace cbalign
