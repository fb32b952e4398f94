#pragma once

// Discrete-event uplink simulation: CBR source -> tail-drop queue -> per-slot
// link adaptation and HARQ over the tracked mmWave/LTE channel.

#include <cstdint>
#include <memory>

#include "uavsim/beamforming.hpp"
#include "uavsim/channel.hpp"
#include "uavsim/geo_mobility.hpp"
#include "uavsim/metrics.hpp"
#include "uavsim/phy_mac.hpp"

namespace uavsim {

inline constexpr double kDefaultBsHeight = 25.0;  // meters
inline constexpr std::int64_t kDefaultBufferLimit = 1'090'000;  // bytes

struct ScenarioConfig {
  std::shared_ptr<const FlightTrace> trace;
  Vec3 bs_position{0.0, 0.0, kDefaultBsHeight};
  RatProfile profile = mmwave_profile();
  ArrayConfig bs_array = ArrayConfig::from_element_count(64);
  ArrayConfig uav_array = ArrayConfig::from_element_count(16);
  double beam_update_period = 5e-3;  ///< seconds
  double source_rate = 1e9;          ///< bits/s of payload
  std::int64_t payload_bytes = 1500;
  std::int64_t header_bytes = 28;  ///< IP + UDP
  double sim_window = 60.0;        ///< seconds
  std::int64_t buffer_limit = kDefaultBufferLimit;  ///< bytes
  std::uint64_t seed = 1;
  double shadowing_sigma_db = 4.0;
  double shadowing_decorrelation = 10.0;  ///< meters
  McsTable mcs_table = default_mcs_table();

  /// Throws std::invalid_argument on any invariant violation.
  void validate() const;
};

/// Seconds between CBR packet arrivals: payload * 8 / source_rate.
double inter_arrival(const ScenarioConfig& config);

/// BS array frame: boresight toward the mission centroid, or level along +x
/// when the BS stands over the centroid.
ArrayFrame bs_array_frame(const Vec3& bs_position, const Vec3& mission_centroid);

/// UAV array frame: facing straight down.
ArrayFrame uav_array_frame();

MetricsLog run(const ScenarioConfig& config);

}  // namespace uavsim
