#pragma once

// Scenario assembly from user-facing settings and key=value config files.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "uavsim/beamforming.hpp"
#include "uavsim/mission.hpp"
#include "uavsim/phy_mac.hpp"
#include "uavsim/stack_sim.hpp"

namespace uavsim {

enum class BsPlacement { on_premise, distant_2km };

inline constexpr double kDistantBsOffset = 2000.0;  // meters along +x

/// "on_premise" / "distant_2km"
std::string to_string(BsPlacement placement);
/// Accepts both underscore and dash spellings ("on-premise", "distant-2km").
BsPlacement parse_placement(const std::string& text);

/// On-premise: over the mission centroid at 25 m. Distant: 2 km east of it.
Vec3 bs_position_for(const FlightTrace& trace, BsPlacement placement,
                     double bs_height = kDefaultBsHeight);

/// Antenna combination a RAT actually uses: LTE is always 1x1.
AntennaCombo effective_antennas(Rat rat, const AntennaCombo& requested);

/// Everything a single run can be configured with from the CLI or a config
/// file, with the project defaults.
struct Settings {
  std::string trace_path;  ///< empty: synthesize `mission`
  MissionArchetype mission = MissionArchetype::defaults(MissionKind::perimeter_patrol);
  Rat profile = Rat::mmwave;
  AntennaCombo antennas{64, 16};
  double rate_mbps = 1000.0;
  BsPlacement placement = BsPlacement::on_premise;
  double window_s = 60.0;
  std::uint64_t seed = 1;
  std::int64_t buffer_bytes = kDefaultBufferLimit;
  std::int64_t payload_bytes = 1500;
  std::int64_t header_bytes = 28;
  double tx_power_dbm = 30.0;
  double noise_figure_db = 5.0;
  double shadowing_sigma_db = 4.0;
  double shadowing_decorrelation_m = 10.0;
  double decimate_s = 0.0;  ///< 0 disables trace decimation

  // Matrix axes (used by the `matrix` verb).
  std::vector<MissionKind> missions = all_mission_kinds();
  std::vector<Rat> profiles = {Rat::mmwave, Rat::lte};
  std::vector<AntennaCombo> antenna_combos = {{16, 4}, {64, 16}};
  std::vector<double> rates_mbps = {1000.0};
  std::vector<BsPlacement> placements = {BsPlacement::on_premise};
  std::vector<std::uint64_t> seeds = {1};
};

/// Flat key=value config with optional [section] headers; keys are looked up
/// without their section, so `[scenario]` and `[matrix]` can share a file.
/// Unknown keys are rejected.
void apply_config_file(Settings& settings, const std::string& path);

/// Applies a single key=value pair (also used for CLI overrides).
void apply_setting(Settings& settings, const std::string& key, const std::string& value);

/// Trace for the settings: loaded from `trace_path` or synthesized.
FlightTrace trace_for(const Settings& settings);

ScenarioConfig make_scenario(std::shared_ptr<const FlightTrace> trace, Rat rat,
                             const AntennaCombo& antennas, double rate_mbps, BsPlacement placement,
                             const Settings& settings);

}  // namespace uavsim
