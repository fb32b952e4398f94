#include "uavsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace uavsim {

void LinkProfile::validate() const {
  if (!(carrier_freq_ghz > 0.0)) throw std::invalid_argument("carrier frequency must be > 0");
  if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("bandwidth must be > 0");
}

double fspl_db(double distance_3d, double carrier_freq_ghz) {
  const double d = std::max(distance_3d, 1.0);
  return 32.4 + 20.0 * std::log10(d) + 20.0 * std::log10(carrier_freq_ghz);
}

double doppler_shift(double radial_speed, double carrier_freq_ghz) {
  return radial_speed * carrier_freq_ghz * 1e9 / kSpeedOfLight;
}

double noise_floor_dbm(double bandwidth_hz, double noise_figure_db) {
  return kThermalNoiseDbmPerHz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

ShadowingField::ShadowingField(ShadowingParams params) : params_(params), rng_(params.seed) {
  if (!(params_.sigma_db >= 0.0)) throw std::invalid_argument("shadowing sigma must be >= 0");
  if (!(params_.decorrelation_distance > 0.0)) {
    throw std::invalid_argument("decorrelation distance must be > 0");
  }
}

double ShadowingField::at(const Vec3& position) {
  if (!last_position_) {
    last_value_ = params_.sigma_db * normal_(rng_);
    last_position_ = position;
    return last_value_;
  }
  const double step = (position - *last_position_).norm();
  if (step == 0.0) return last_value_;
  const double rho = std::exp(-step / params_.decorrelation_distance);
  last_value_ = rho * last_value_ + std::sqrt(1.0 - rho * rho) * params_.sigma_db * normal_(rng_);
  last_position_ = position;
  return last_value_;
}

double link_budget_snr(const ChannelSample& s) {
  return s.tx_power_dbm + s.tx_gain_db + s.rx_gain_db - s.pathloss_db - s.shadowing_db -
         s.noise_floor_dbm;
}

ChannelSample sample_channel(const LinkProfile& profile, const MobilityState& ue,
                             const Vec3& bs_position, double tx_gain_db, double rx_gain_db,
                             ShadowingField& field, double t) {
  ChannelSample s;
  s.t = t;
  const Vec3 los = ue.position - bs_position;
  s.distance_3d = los.norm();
  s.pathloss_db = fspl_db(s.distance_3d, profile.carrier_freq_ghz);
  s.shadowing_db = field.at(ue.position);

  // Range rate is the velocity component along the BS->UE ray; closing is positive.
  const double range_rate = s.distance_3d > 0.0 ? ue.velocity.dot(los) / s.distance_3d : 0.0;
  s.doppler_hz = doppler_shift(-range_rate, profile.carrier_freq_ghz);

  s.tx_gain_db = tx_gain_db;
  s.rx_gain_db = rx_gain_db;
  s.tx_power_dbm = profile.tx_power_dbm;
  s.noise_floor_dbm = noise_floor_dbm(profile.bandwidth_hz, profile.noise_figure_db);
  s.snr_db = link_budget_snr(s);

  const double amplitude =
      std::pow(10.0, (tx_gain_db + rx_gain_db - s.pathloss_db - s.shadowing_db) / 20.0);
  s.coefficient = std::polar(amplitude, 2.0 * std::numbers::pi * s.doppler_hz * t);
  return s;
}

}  // namespace uavsim
