#pragma once

// Uniform planar arrays, DFT codebooks and periodic beam tracking.

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uavsim/vec3.hpp"

namespace uavsim {

using ComplexVector = std::vector<std::complex<double>>;

struct ArrayConfig {
  int n_h = 1;
  int n_v = 1;
  double spacing = 0.5;  ///< element spacing in wavelengths

  int size() const noexcept { return n_h * n_v; }
  void validate() const;

  /// Most-square factorization of `elements` with n_h >= n_v (64 -> 8x8,
  /// 16 -> 4x4, 4 -> 2x2, 8 -> 4x2).
  static ArrayConfig from_element_count(int elements);
  bool operator==(const ArrayConfig&) const = default;
};

/// BS x UAV element totals, e.g. "64x16".
struct AntennaCombo {
  int bs_elements = 1;
  int uav_elements = 1;

  static AntennaCombo parse(std::string_view text);
  std::string to_string() const;
  bool operator==(const AntennaCombo&) const = default;
};

/// LOS direction in an array's local frame.
struct Geometry {
  double azimuth = 0.0;    ///< (-pi, pi]
  double elevation = 0.0;  ///< [-pi/2, pi/2]
};

/// Orthonormal array frame: boresight (array normal), horizontal axis (along
/// the n_h element index) and vertical axis (along n_v).
struct ArrayFrame {
  Vec3 boresight{1.0, 0.0, 0.0};
  Vec3 horizontal{0.0, 1.0, 0.0};
  Vec3 vertical{0.0, 0.0, 1.0};

  /// Frame whose boresight points along `direction`. The horizontal axis is
  /// kept level when possible.
  static ArrayFrame facing(const Vec3& direction);

  /// Angles of the ray leaving the array toward `target_direction`.
  Geometry geometry_toward(const Vec3& target_direction) const;
};

struct Beam {
  std::size_t index = 0;
  ComplexVector weights;
};

using Codebook = std::vector<Beam>;

struct BeamPair {
  std::size_t tx_index = 0;
  std::size_t rx_index = 0;
  double tx_gain_db = 0.0;
  double rx_gain_db = 0.0;
  double selected_at = 0.0;

  double combined_gain_db() const noexcept { return tx_gain_db + rx_gain_db; }
};

/// Lowest gain reported for a (numerically) orthogonal beam.
inline constexpr double kGainFloorDb = -200.0;

ComplexVector steering_vector(const ArrayConfig& array, const Geometry& geom);
Codebook dft_codebook(const ArrayConfig& array);
double beam_gain_db(const ArrayConfig& array, const Beam& beam, const Geometry& geom);

/// Exhaustive search over every (BS beam, UAV beam) pair; ties go to the lowest
/// (tx, rx) index pair.
BeamPair best_beam_pair(const ArrayConfig& bs_array, const Codebook& bs_codebook,
                        const ArrayConfig& uav_array, const Codebook& uav_codebook,
                        const Geometry& bs_geom, const Geometry& uav_geom, double t);

/// Convenience overload that builds DFT codebooks on the fly.
BeamPair best_beam_pair(const ArrayConfig& bs_array, const ArrayConfig& uav_array,
                        const Geometry& bs_geom, const Geometry& uav_geom, double t);

/// Periodic beam tracking. The pair is re-selected at every multiple of the
/// update period and held fixed in between, so gains between updates are
/// those of the stale pair at the true current geometry.
class BeamTracker {
 public:
  BeamTracker(ArrayConfig bs_array, ArrayConfig uav_array, double update_period = 5e-3);

  struct Gains {
    double tx_gain_db = 0.0;
    double rx_gain_db = 0.0;
    bool refreshed = false;
  };

  /// Queries must be made with non-decreasing t.
  Gains gains(double t, const Geometry& bs_geom, const Geometry& uav_geom);

  const BeamPair& current() const noexcept { return pair_; }
  double update_period() const noexcept { return update_period_; }
  const ArrayConfig& bs_array() const noexcept { return bs_array_; }
  const ArrayConfig& uav_array() const noexcept { return uav_array_; }

 private:
  ArrayConfig bs_array_;
  ArrayConfig uav_array_;
  Codebook bs_codebook_;
  Codebook uav_codebook_;
  double update_period_;
  long long epoch_ = -1;
  BeamPair pair_;
};

}  // namespace uavsim
