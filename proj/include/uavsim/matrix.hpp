#pragma once

// Batch execution over missions x profiles x antennas x rates x placements x
// seeds, one independent simulation per cell.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "uavsim/report.hpp"
#include "uavsim/scenario.hpp"

namespace uavsim {

struct RunMatrix {
  std::vector<MissionArchetype> missions;
  std::vector<Rat> profiles;
  std::vector<AntennaCombo> antenna_combos;
  std::vector<double> source_rates_mbps;
  std::vector<BsPlacement> placements;
  std::vector<std::uint64_t> seeds;
  Settings base;  ///< link/traffic parameters shared by every cell

  /// Throws std::invalid_argument when any axis is empty.
  void validate() const;

  /// Axes taken from the matrix fields of `settings`, missions built with the
  /// settings' archetype dimensions.
  static RunMatrix from_settings(const Settings& settings);
};

struct MatrixCell {
  std::size_t index = 0;
  MissionArchetype mission;
  Rat profile = Rat::mmwave;
  AntennaCombo antennas;
  double rate_mbps = 0.0;
  BsPlacement placement = BsPlacement::on_premise;
  std::uint64_t seed = 1;

  /// Stable per-cell directory name.
  std::string slug() const;
};

/// Cells in canonical order. LTE contributes one cell per remaining axes
/// combination since its antennas are fixed at 1x1.
std::vector<MatrixCell> expand(const RunMatrix& matrix);

struct MatrixOptions {
  std::size_t workers = 1;
  bool packet_logs = false;
  double snr_log_interval = 0.01;  ///< seconds between SNR trace rows
  double series_interval = 5.0;    ///< latency/throughput averaging interval
  /// Execution order as a permutation of cell indices; empty = canonical.
  std::vector<std::size_t> execution_order;
};

struct CellFailure {
  std::size_t index = 0;
  std::string slug;
  std::string error;
};

struct MatrixResult {
  std::vector<std::optional<SummaryRow>> rows;  ///< by cell index; empty on failure
  std::vector<CellFailure> failures;

  std::vector<SummaryRow> completed_rows() const;
};

/// Runs every cell and writes `<out>/<slug>/...` logs plus `<out>/summary.csv`
/// and `<out>/summary.txt`. A failing cell is reported without stopping the
/// others.
MatrixResult run_matrix(const RunMatrix& matrix, const std::filesystem::path& out_dir,
                        const MatrixOptions& options = {});

/// Runs one cell in memory and writes its logs to `cell_dir`.
SummaryRow run_cell(const MatrixCell& cell, const Settings& base,
                    const std::filesystem::path& cell_dir, const MatrixOptions& options);

}  // namespace uavsim
