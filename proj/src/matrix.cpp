#include "uavsim/matrix.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "uavsim/csv.hpp"

namespace uavsim {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void write_series_csv(const std::filesystem::path& path, const MetricsLog& log, double interval) {
  auto out = open_output(path);
  const auto throughput = pdcp_throughput(log, interval);
  const auto latency = latency_series(log, interval);
  out << "t_start_s,throughput_mbps,mean_latency_ms\n";
  for (std::size_t i = 0; i < throughput.size(); ++i) {
    out << csv::format_double(static_cast<double>(i) * interval) << ','
        << csv::format_double(throughput[i] / 1e6) << ','
        << (latency[i] ? csv::format_double(*latency[i] * 1e3) : std::string{}) << '\n';
  }
}

std::string rate_label(double rate_mbps) {
  const double rounded = std::round(rate_mbps);
  if (rounded == rate_mbps) return std::to_string(static_cast<long long>(rounded));
  return csv::format_double(rate_mbps);
}

}  // namespace

void RunMatrix::validate() const {
  if (missions.empty()) throw std::invalid_argument("run matrix: no missions");
  if (profiles.empty()) throw std::invalid_argument("run matrix: no profiles");
  if (antenna_combos.empty()) throw std::invalid_argument("run matrix: no antenna combinations");
  if (source_rates_mbps.empty()) throw std::invalid_argument("run matrix: no source rates");
  if (placements.empty()) throw std::invalid_argument("run matrix: no BS placements");
  if (seeds.empty()) throw std::invalid_argument("run matrix: no seeds");
  for (const auto& m : missions) m.validate();
  for (double r : source_rates_mbps) {
    if (!(r > 0.0)) throw std::invalid_argument("run matrix: source rates must be > 0");
  }
}

RunMatrix RunMatrix::from_settings(const Settings& settings) {
  RunMatrix m;
  for (auto kind : settings.missions) {
    MissionArchetype a = settings.mission;
    a.kind = kind;
    m.missions.push_back(a);
  }
  m.profiles = settings.profiles;
  m.antenna_combos = settings.antenna_combos;
  m.source_rates_mbps = settings.rates_mbps;
  m.placements = settings.placements;
  m.seeds = settings.seeds;
  m.base = settings;
  return m;
}

std::string MatrixCell::slug() const {
  return to_string(mission.kind) + "_" + to_string(profile) + "_" + antennas.to_string() + "_" +
         rate_label(rate_mbps) + "mbps_" + to_string(placement) + "_s" + std::to_string(seed);
}

std::vector<MatrixCell> expand(const RunMatrix& matrix) {
  matrix.validate();
  std::vector<MatrixCell> cells;
  for (const auto& mission : matrix.missions) {
    for (auto rat : matrix.profiles) {
      std::vector<AntennaCombo> combos;
      for (const auto& c : matrix.antenna_combos) {
        const auto eff = effective_antennas(rat, c);
        if (std::find(combos.begin(), combos.end(), eff) == combos.end()) combos.push_back(eff);
      }
      for (const auto& combo : combos) {
        for (double rate : matrix.source_rates_mbps) {
          for (auto placement : matrix.placements) {
            for (auto seed : matrix.seeds) {
              cells.push_back({cells.size(), mission, rat, combo, rate, placement, seed});
            }
          }
        }
      }
    }
  }
  return cells;
}

std::vector<SummaryRow> MatrixResult::completed_rows() const {
  std::vector<SummaryRow> out;
  for (const auto& r : rows) {
    if (r) out.push_back(*r);
  }
  return out;
}

SummaryRow run_cell(const MatrixCell& cell, const Settings& base,
                    const std::filesystem::path& cell_dir, const MatrixOptions& options) {
  Settings settings = base;
  settings.seed = cell.seed;
  settings.mission = cell.mission;
  FlightTrace synthesized = synth_trace(cell.mission, cell.seed);
  if (base.decimate_s > 0.0) synthesized = decimate(synthesized, base.decimate_s);
  auto trace = std::make_shared<const FlightTrace>(std::move(synthesized));
  const auto config =
      make_scenario(std::move(trace), cell.profile, cell.antennas, cell.rate_mbps, cell.placement, settings);
  const auto log = run(config);
  const auto row = make_row(to_string(cell.mission.kind), to_string(cell.profile),
                            cell.antennas.to_string(), cell.rate_mbps, to_string(cell.placement),
                            summarize(log));

  std::filesystem::create_directories(cell_dir);
  {
    auto out = open_output(cell_dir / "summary.csv");
    write_report_csv(out, {row});
  }
  {
    auto out = open_output(cell_dir / "snr.csv");
    const auto stride = static_cast<std::size_t>(
        std::max(1.0, std::round(options.snr_log_interval / config.profile.slot_duration)));
    write_snr_csv(out, log, stride);
  }
  write_series_csv(cell_dir / "series.csv", log, options.series_interval);
  if (options.packet_logs) {
    auto out = open_output(cell_dir / "packets.csv");
    write_packet_csv(out, log);
  }
  return row;
}

MatrixResult run_matrix(const RunMatrix& matrix, const std::filesystem::path& out_dir,
                        const MatrixOptions& options) {
  const auto cells = expand(matrix);
  std::vector<std::size_t> order = options.execution_order;
  if (order.empty()) {
    for (std::size_t i = 0; i < cells.size(); ++i) order.push_back(i);
  }
  {
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted.size() != cells.size() || sorted[i] != i) {
        throw std::invalid_argument("execution order must be a permutation of the cells");
      }
    }
  }

  std::filesystem::create_directories(out_dir);
  MatrixResult result;
  result.rows.resize(cells.size());
  std::mutex failures_mutex;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t k = next++; k < order.size(); k = next++) {
      const auto& cell = cells[order[k]];
      try {
        result.rows[cell.index] = run_cell(cell, matrix.base, out_dir / cell.slug(), options);
      } catch (const std::exception& e) {
        std::lock_guard lock(failures_mutex);
        result.failures.push_back({cell.index, cell.slug(), e.what()});
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(cells.size(), 1));
  std::vector<std::jthread> pool;
  for (std::size_t i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();

  std::sort(result.failures.begin(), result.failures.end(),
            [](const CellFailure& a, const CellFailure& b) { return a.index < b.index; });
  const auto rows = result.completed_rows();
  if (!rows.empty()) {
    auto csv_out = open_output(out_dir / "summary.csv");
    write_report_csv(csv_out, rows);
    auto txt_out = open_output(out_dir / "summary.txt");
    txt_out << format_table(rows);
  }
  return result;
}

}  // namespace uavsim
