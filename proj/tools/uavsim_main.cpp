// uavsim command-line front end: synth-trace, simulate, matrix, report.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "uavsim/csv.hpp"
#include "uavsim/geo_mobility.hpp"
#include "uavsim/matrix.hpp"
#include "uavsim/metrics.hpp"
#include "uavsim/mission.hpp"
#include "uavsim/report.hpp"
#include "uavsim/scenario.hpp"
#include "uavsim/stack_sim.hpp"

namespace fs = std::filesystem;
using namespace uavsim;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Setting overrides collected from flags, applied after any --config file.
struct Overrides {
  std::string config;
  std::map<std::string, std::string> values;

  void flag(CLI::App* app, const std::string& name, const std::string& key, const std::string& help) {
    app->add_option_function<std::string>(
        name, [this, key](const std::string& v) { values[key] = v; }, help);
  }

  Settings resolve() const {
    Settings s;
    if (!config.empty()) apply_config_file(s, config);
    for (const auto& [key, value] : values) apply_setting(s, key, value);
    return s;
  }
};

void add_scenario_flags(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config, "key=value scenario file")->check(CLI::ExistingFile);
  o.flag(app, "--trace", "trace", "flight trace CSV (t_s,lat_deg,lon_deg,alt_m)");
  o.flag(app, "--mission", "mission",
         "synthetic mission when no trace is given: overwatch_orbit|search_lawnmower|"
         "perimeter_patrol|target_follow");
  o.flag(app, "--profile", "profile", "mmwave|lte");
  o.flag(app, "--antennas", "antennas", "BS x UAV elements, e.g. 64x16");
  o.flag(app, "--rate-mbps", "rate_mbps", "CBR source rate in Mbps");
  o.flag(app, "--bs", "bs", "on-premise|distant-2km");
  o.flag(app, "--window-s", "window_s", "simulated seconds");
  o.flag(app, "--seed", "seed", "RNG seed");
  o.flag(app, "--buffer-bytes", "buffer_bytes", "transmit queue limit in bytes");
  o.flag(app, "--tx-power-dbm", "tx_power_dbm", "UAV transmit power");
  o.flag(app, "--noise-figure-db", "noise_figure_db", "BS noise figure");
  o.flag(app, "--decimate-s", "decimate_s", "minimum waypoint spacing in seconds");
}

void add_mission_shape_flags(CLI::App* app, Overrides& o) {
  o.flag(app, "--duration-s", "duration_s", "mission duration");
  o.flag(app, "--speed-mps", "speed_mps", "UAV ground speed (<= 20 m/s)");
  o.flag(app, "--altitude-m", "altitude_m", "flight altitude");
  o.flag(app, "--area-width-m", "area_width_m", "mission area east-west extent");
  o.flag(app, "--area-height-m", "area_height_m", "mission area north-south extent");
}

std::ofstream open_for_write(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

int cmd_synth_trace(const Overrides& o, const std::string& out_path) {
  const Settings s = o.resolve();
  const auto trace = synth_trace(s.mission, s.seed);
  if (out_path.empty() || out_path == "-") {
    write_trace_csv(std::cout, trace);
  } else {
    auto out = open_for_write(out_path);
    write_trace_csv(out, trace);
  }
  return 0;
}

int cmd_simulate(const Overrides& o, const std::string& out_dir, bool packet_log,
                 double snr_every) {
  const Settings s = o.resolve();
  if (!s.trace_path.empty() && !fs::is_regular_file(s.trace_path)) {
    throw IoError("cannot read trace '" + s.trace_path + "'");
  }
  auto trace = std::make_shared<const FlightTrace>(trace_for(s));
  const auto config = make_scenario(trace, s.profile, s.antennas, s.rate_mbps, s.placement, s);
  const auto log = run(config);
  const auto summary = summarize(log);
  const std::string mission = s.trace_path.empty() ? to_string(s.mission.kind)
                                                   : fs::path(s.trace_path).stem().string();
  const auto row = make_row(mission, to_string(s.profile),
                            effective_antennas(s.profile, s.antennas).to_string(), s.rate_mbps,
                            to_string(s.placement), summary);

  std::cout << format_table({row});
  std::cout << "packets: generated " << summary.generated << ", delivered " << summary.delivered
            << ", dropped_buffer " << summary.dropped_buffer << ", dropped_harq "
            << summary.dropped_harq << ", in_flight " << summary.in_flight << '\n'
            << "SNR: mean " << summary.mean_snr_db << " dB, min " << summary.min_snr_db
            << " dB\n";

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    {
      auto out = open_for_write(fs::path(out_dir) / "summary.csv");
      write_report_csv(out, {row});
    }
    {
      auto out = open_for_write(fs::path(out_dir) / "snr.csv");
      const auto stride = static_cast<std::size_t>(
          std::max(1.0, std::round(snr_every / config.profile.slot_duration)));
      write_snr_csv(out, log, stride);
    }
    {
      auto out = open_for_write(fs::path(out_dir) / "latency_5s.csv");
      out << "t_start_s,mean_latency_ms\n";
      const auto series = latency_series(log, 5.0);
      for (std::size_t i = 0; i < series.size(); ++i) {
        out << csv::format_double(5.0 * static_cast<double>(i)) << ','
            << (series[i] ? csv::format_double(*series[i] * 1e3) : std::string{}) << '\n';
      }
    }
    if (packet_log) {
      auto out = open_for_write(fs::path(out_dir) / "packets.csv");
      write_packet_csv(out, log);
    }
  }
  return 0;
}

int cmd_matrix(const Overrides& o, const std::string& out_dir, const MatrixOptions& options) {
  const Settings s = o.resolve();
  auto matrix = RunMatrix::from_settings(s);
  // Single-valued flags narrow the corresponding axis.
  if (o.values.count("profile")) matrix.profiles = {s.profile};
  if (o.values.count("antennas")) matrix.antenna_combos = {s.antennas};
  if (o.values.count("rate_mbps")) matrix.source_rates_mbps = {s.rate_mbps};
  if (o.values.count("bs")) matrix.placements = {s.placement};
  if (o.values.count("seed")) matrix.seeds = {s.seed};
  if (o.values.count("mission")) {
    matrix.missions = {s.mission};
  }

  const auto result = run_matrix(matrix, out_dir.empty() ? fs::path("matrix_out") : fs::path(out_dir),
                                 options);
  const auto rows = result.completed_rows();
  if (!rows.empty()) std::cout << format_table(rows);
  for (const auto& f : result.failures) {
    std::cerr << "cell " << f.index << " (" << f.slug << ") failed: " << f.error << '\n';
  }
  return result.failures.empty() ? 0 : kExitIo;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& out_path) {
  std::vector<SummaryRow> rows;
  for (const auto& path : inputs) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read '" + path + "'");
    const auto part = read_report_csv(in);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  std::cout << format_table(rows);
  if (!out_path.empty()) {
    auto out = open_for_write(out_path);
    write_report_csv(out, rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace-driven UAV uplink simulator (28 GHz mmWave and 2.1 GHz LTE-class)"};
  app.require_subcommand(1);

  Overrides synth_o;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth-trace", "generate a synthetic mission trace CSV");
  synth->add_option("--config", synth_o.config, "key=value file")->check(CLI::ExistingFile);
  synth_o.flag(synth, "--mission", "mission", "mission archetype");
  synth_o.flag(synth, "--seed", "seed", "RNG seed");
  add_mission_shape_flags(synth, synth_o);
  synth->add_option("--out", synth_out, "output CSV (default stdout)");

  Overrides sim_o;
  std::string sim_out;
  bool no_packet_log = false;
  double snr_every = 0.0;
  auto* simulate = app.add_subcommand("simulate", "run one scenario");
  add_scenario_flags(simulate, sim_o);
  add_mission_shape_flags(simulate, sim_o);
  simulate->add_option("--out", sim_out, "output directory for CSV logs");
  simulate->add_flag("--no-packet-log", no_packet_log, "skip the per-packet CSV");
  simulate->add_option("--snr-every-s", snr_every, "SNR trace row spacing (0 = every slot)");

  Overrides mat_o;
  std::string mat_out;
  MatrixOptions mat_options;
  auto* matrix = app.add_subcommand("matrix", "run a mission x profile x antenna grid");
  add_scenario_flags(matrix, mat_o);
  add_mission_shape_flags(matrix, mat_o);
  mat_o.flag(matrix, "--missions", "missions", "comma-separated mission archetypes");
  mat_o.flag(matrix, "--profiles", "profiles", "comma-separated profiles");
  mat_o.flag(matrix, "--antenna-combos", "antenna_combos", "comma-separated, e.g. 16x4,64x16");
  mat_o.flag(matrix, "--rates-mbps", "rates_mbps", "comma-separated source rates");
  mat_o.flag(matrix, "--placements", "placements", "comma-separated BS placements");
  mat_o.flag(matrix, "--seeds", "seeds", "comma-separated seeds");
  matrix->add_option("--out", mat_out, "output directory (default matrix_out)");
  matrix->add_option("--workers", mat_options.workers, "parallel cells")->check(CLI::PositiveNumber);
  matrix->add_flag("--packet-logs", mat_options.packet_logs, "write per-packet CSV for every cell");

  std::vector<std::string> report_inputs;
  std::string report_out;
  auto* report = app.add_subcommand("report", "print summary CSVs as a table");
  report->add_option("inputs", report_inputs, "summary CSV files")->required()->check(CLI::ExistingFile);
  report->add_option("--out", report_out, "combined CSV output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) return cmd_synth_trace(synth_o, synth_out);
    if (*simulate) return cmd_simulate(sim_o, sim_out, !no_packet_log, snr_every);
    if (*matrix) return cmd_matrix(mat_o, mat_out, mat_options);
    if (*report) return cmd_report(report_inputs, report_out);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
