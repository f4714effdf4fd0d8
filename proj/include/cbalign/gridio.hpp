// SPDX-License-Identifier: Apache-2.0

#ifndef CBALIGN_GRIDIO_HPP
#define CBALIGN_GRIDIO_HPP

#include <cstdint>
#include <string>

#include "cbalign/channelsynth.hpp"
#include "cbalign/sensing.hpp"

namespace cbalign {

// Power grid CSV: header "rx_idx,tx_idx,power_linear", row-major (rx outer,
// tx inner), decimal text. This is both the ground-truth export format and
// the ingestion format for real measured grids.
void export_power_map_csv(const PowerMap& map, const std::string& path);

// Reads a complete q x p grid; q and p are inferred from the indices.
// Missing cells, duplicate cells and negative linear powers are ingest
// errors naming the offending rows. With values_in_db set, entries are
// interpreted as dBm and converted to linear mW-equivalent power.
PowerMap ingest_grid(const std::string& path, bool values_in_db = false);

// Debug/replay export: header "rx_codebook_idx,tx_codebook_idx,power_linear".
void export_measurements_csv(const MeasurementSet& meas,
                             const std::string& path);

// ASCII portable graymap (P2) of the map in dB scale. Pixel brightness is a
// rank-preserving map of value: full white at the peak, black at span_db
// below it (or at zero power).
void write_pgm_heatmap(const Eigen::MatrixXd& values, const std::string& path,
                       double span_db = 40.0);

// FNV-1a 64-bit hash of a file's bytes, for run manifests.
std::uint64_t fnv1a_file(const std::string& path);

// Decimal text used by every CSV writer; round-trips doubles exactly.
std::string format_double(double x);

}  // namespace cbalign

#endif  // CBALIGN_GRIDIO_HPP
