#pragma once

// Synthetic stand-ins for public-safety flight missions.

#include <cstdint>
#include <string>
#include <vector>

#include "uavsim/geo_mobility.hpp"

namespace uavsim {

enum class MissionKind {
  overwatch_orbit,   ///< crowd overwatch: circle around the area centroid
  search_lawnmower,  ///< missing person: boustrophedon sweep
  perimeter_patrol,  ///< prescribed burn: loop around the burn perimeter
  target_follow,     ///< sonar boat training: follow a wandering target
};

std::string to_string(MissionKind kind);
MissionKind parse_mission_kind(const std::string& text);
const std::vector<MissionKind>& all_mission_kinds();

inline constexpr double kMaxUavSpeed = 20.0;  // m/s

struct MissionArchetype {
  MissionKind kind = MissionKind::overwatch_orbit;
  double area_width = 300.0;   ///< meters, east-west extent
  double area_height = 300.0;  ///< meters, north-south extent
  double speed = 5.0;          ///< m/s
  double altitude = 30.0;      ///< meters
  double duration = 600.0;     ///< seconds

  void validate() const;
  static MissionArchetype defaults(MissionKind kind);
};

/// Geodetic anchor for synthetic traces.
GeoPoint default_trace_origin();

/// Deterministic trace with 1 s waypoint spacing at constant altitude. The
/// trace is expressed relative to its first waypoint, which sits at the local
/// origin.
FlightTrace synth_trace(const MissionArchetype& archetype, std::uint64_t seed,
                        const GeoPoint& origin = default_trace_origin());

/// Orbit radius used for a given area: a third of the smaller extent.
double orbit_radius(const MissionArchetype& archetype);

}  // namespace uavsim
