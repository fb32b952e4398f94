#pragma once

// Single-ray line-of-sight channel: free-space pathloss, spatially correlated
// log-normal shadowing, Doppler as a pure phase rotation, and the uplink
// link budget that turns all of it into an SNR.

#include <complex>
#include <cstdint>
#include <optional>
#include <random>

#include "uavsim/geo_mobility.hpp"
#include "uavsim/vec3.hpp"

namespace uavsim {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kThermalNoiseDbmPerHz = -174.0;

struct LinkProfile {
  double carrier_freq_ghz = 28.0;
  double bandwidth_hz = 1e9;
  double tx_power_dbm = 30.0;
  double noise_figure_db = 5.0;

  /// Throws std::invalid_argument on non-positive frequency or bandwidth.
  void validate() const;
};

/// Free-space pathloss in dB; distances below 1 m are clamped to 1 m.
double fspl_db(double distance_3d, double carrier_freq_ghz);

/// Doppler shift in Hz; positive radial speed means the range is closing.
double doppler_shift(double radial_speed, double carrier_freq_ghz);

/// Thermal noise floor in dBm over `bandwidth_hz`.
double noise_floor_dbm(double bandwidth_hz, double noise_figure_db);

struct ShadowingParams {
  double sigma_db = 4.0;
  double decorrelation_distance = 10.0;  ///< meters
  std::uint64_t seed = 1;
};

/// Shadowing realized as a first-order Gauss-Markov process along the queried
/// path: each query moves the state by the distance from the previous query
/// with correlation exp(-d / decorrelation_distance). Owned by one run.
class ShadowingField {
 public:
  explicit ShadowingField(ShadowingParams params);

  /// Shadowing in dB at `position`. Re-querying the last position returns the
  /// same value.
  double at(const Vec3& position);

  const ShadowingParams& params() const noexcept { return params_; }

 private:
  ShadowingParams params_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::optional<Vec3> last_position_;
  double last_value_ = 0.0;
};

struct ChannelSample {
  double t = 0.0;
  double distance_3d = 0.0;
  double pathloss_db = 0.0;
  double shadowing_db = 0.0;
  double doppler_hz = 0.0;
  double tx_gain_db = 0.0;
  double rx_gain_db = 0.0;
  double tx_power_dbm = 0.0;
  double noise_floor_dbm = 0.0;
  double snr_db = 0.0;
  /// Narrowband single-ray coefficient; Doppler only rotates its phase.
  std::complex<double> coefficient;
};

/// snr = tx_power + tx_gain + rx_gain - pathloss - shadowing - noise_floor
double link_budget_snr(const ChannelSample& s);

ChannelSample sample_channel(const LinkProfile& profile, const MobilityState& ue,
                             const Vec3& bs_position, double tx_gain_db, double rx_gain_db,
                             ShadowingField& field, double t);

}  // namespace uavsim
