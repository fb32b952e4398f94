#pragma once

// Flight trace ingestion and waypoint mobility.
//
// Traces arrive as timestamped geodetic fixes. They are projected onto a
// local flat frame anchored at the first fix (equirectangular, 111 km per
// degree of latitude, longitude scaled by cos(reference latitude)) and then
// replayed as piecewise-linear waypoint motion.

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavsim/vec3.hpp"

namespace uavsim {

/// Meters per degree of latitude used by the flat-earth projection.
inline constexpr double kMetersPerDegree = 111000.0;

struct GeoPoint {
  double t = 0.0;    ///< seconds since trace start
  double lat = 0.0;  ///< degrees
  double lon = 0.0;  ///< degrees
  double alt = 0.0;  ///< meters above ground
};

/// Throws std::invalid_argument when a fix is outside the valid ranges.
void validate(const GeoPoint& p);

struct Waypoint {
  double t = 0.0;
  Vec3 position;
};

struct MobilityState {
  Vec3 position;
  Vec3 velocity;
};

/// Malformed trace input. Carries the 1-based line number of the offending row
/// (0 when the problem is not tied to a single line).
class TraceParseError : public std::runtime_error {
 public:
  TraceParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Trace content that parsed but violates the trace invariants.
class TraceValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered, validated waypoint sequence. Immutable after construction.
class FlightTrace {
 public:
  /// Throws TraceValidationError unless there are >= 2 waypoints with strictly
  /// increasing, non-negative times, finite coordinates and z >= 0.
  FlightTrace(GeoPoint origin, std::vector<Waypoint> points);

  const GeoPoint& origin() const noexcept { return origin_; }
  const std::vector<Waypoint>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  double start_time() const noexcept { return points_.front().t; }
  double end_time() const noexcept { return points_.back().t; }

  /// Center of the horizontal bounding box, at the mean waypoint altitude.
  Vec3 centroid() const;

 private:
  GeoPoint origin_;
  std::vector<Waypoint> points_;
};

struct PlanarOffset {
  double x = 0.0;  ///< east, meters
  double y = 0.0;  ///< north, meters
};

PlanarOffset latlon_to_xy(const GeoPoint& p, const GeoPoint& ref);

/// Inverse of latlon_to_xy for the same reference.
GeoPoint xy_to_latlon(double x, double y, double alt, double t, const GeoPoint& ref);

/// Reads `t_s,lat_deg,lon_deg,alt_m` CSV (header required). The first row is
/// the projection origin.
FlightTrace parse_trace(std::istream& in);
FlightTrace parse_trace_file(const std::string& path);

/// Writes the trace back out in the same CSV format, projecting through the
/// trace origin.
void write_trace_csv(std::ostream& out, const FlightTrace& trace);

/// Greedy time decimation: keep the first waypoint, then any waypoint at least
/// `min_spacing` seconds after the last kept one; the last waypoint is always
/// kept.
FlightTrace decimate(const FlightTrace& trace, double min_spacing);

/// Piecewise-linear position and segment velocity. Outside the trace time span
/// the position is clamped to the nearest endpoint with zero velocity.
MobilityState state_at(const FlightTrace& trace, double t);

}  // namespace uavsim
