#include "uavsim/mission.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace uavsim {

namespace {

constexpr double kWaypointSpacing = 1.0;  // seconds
constexpr double kDegenerateSpan = 1e-3;  // seconds, second point of a zero-length trace

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Constant-speed walk along a polyline. Closed paths wrap around; open paths
// ping-pong between their ends.
class PolylineWalk {
 public:
  PolylineWalk(std::vector<Point2> vertices, bool closed) : vertices_(std::move(vertices)) {
    if (closed) vertices_.push_back(vertices_.front());
    closed_ = closed;
    cumulative_.push_back(0.0);
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
      cumulative_.push_back(cumulative_.back() + std::hypot(vertices_[i].x - vertices_[i - 1].x,
                                                            vertices_[i].y - vertices_[i - 1].y));
    }
  }

  Point2 at(double s) const {
    const double length = cumulative_.back();
    if (length <= 0.0) return vertices_.front();
    if (closed_) {
      s = std::fmod(s, length);
    } else {
      s = std::fmod(s, 2.0 * length);
      if (s > length) s = 2.0 * length - s;
    }
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
    const std::size_t i = std::min<std::size_t>(
        static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - cumulative_.begin(), 1)),
        vertices_.size() - 1);
    const double seg = cumulative_[i] - cumulative_[i - 1];
    const double f = seg > 0.0 ? (s - cumulative_[i - 1]) / seg : 0.0;
    return {vertices_[i - 1].x + f * (vertices_[i].x - vertices_[i - 1].x),
            vertices_[i - 1].y + f * (vertices_[i].y - vertices_[i - 1].y)};
  }

 private:
  std::vector<Point2> vertices_;
  std::vector<double> cumulative_;
  bool closed_ = false;
};

std::vector<double> waypoint_times(double duration) {
  std::vector<double> times;
  const auto whole = static_cast<long>(std::floor(duration / kWaypointSpacing));
  for (long i = 0; i <= whole; ++i) times.push_back(static_cast<double>(i) * kWaypointSpacing);
  if (duration - times.back() > 1e-9) times.push_back(duration);
  return times;
}

std::vector<Point2> orbit_path(const MissionArchetype& a, const std::vector<double>& times) {
  const double r = orbit_radius(a);
  std::vector<Point2> out;
  for (double t : times) {
    const double angle = a.speed * t / r;
    out.push_back({r * std::cos(angle), r * std::sin(angle)});
  }
  return out;
}

std::vector<Point2> lawnmower_path(const MissionArchetype& a, const std::vector<double>& times) {
  const double lane_spacing = a.area_width / 10.0;
  const double half_h = a.area_height / 2.0;
  std::vector<Point2> vertices;
  for (int lane = 0; lane <= 10; ++lane) {
    const double x = -a.area_width / 2.0 + lane * lane_spacing;
    const bool northbound = lane % 2 == 0;
    vertices.push_back({x, northbound ? -half_h : half_h});
    vertices.push_back({x, northbound ? half_h : -half_h});
  }
  const PolylineWalk walk(std::move(vertices), false);
  std::vector<Point2> out;
  for (double t : times) out.push_back(walk.at(a.speed * t));
  return out;
}

std::vector<Point2> patrol_path(const MissionArchetype& a, const std::vector<double>& times) {
  const double hx = 0.4 * a.area_width;
  const double hy = 0.4 * a.area_height;
  const PolylineWalk walk({{-hx, -hy}, {hx, -hy}, {hx, hy}, {-hx, hy}}, true);
  std::vector<Point2> out;
  for (double t : times) out.push_back(walk.at(a.speed * t));
  return out;
}

double reflect(double v, double limit, double& direction_sign) {
  if (v > limit) {
    direction_sign = -1.0;
    return 2.0 * limit - v;
  }
  if (v < -limit) {
    direction_sign = 1.0;
    return -2.0 * limit - v;
  }
  return v;
}

std::vector<Point2> follow_path(const MissionArchetype& a, const std::vector<double>& times,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> turn(0.0, 0.3);
  const double lim_x = 0.45 * a.area_width;
  const double lim_y = 0.45 * a.area_height;
  const double target_speed = 0.8 * a.speed;
  constexpr double kSmoothing = 0.3;

  Point2 target{0.0, 0.0};
  Point2 uav{0.0, 0.0};
  double heading = std::uniform_real_distribution<double>(-std::numbers::pi, std::numbers::pi)(rng);
  std::vector<Point2> out{uav};
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double dt = times[i] - times[i - 1];
    heading += turn(rng) * std::sqrt(dt);
    double sx = 0.0, sy = 0.0;
    target.x = reflect(target.x + target_speed * dt * std::cos(heading), lim_x, sx);
    target.y = reflect(target.y + target_speed * dt * std::sin(heading), lim_y, sy);
    if (sx != 0.0 || sy != 0.0) {
      double cx = std::cos(heading), cy = std::sin(heading);
      if (sx != 0.0) cx = sx * std::abs(cx);
      if (sy != 0.0) cy = sy * std::abs(cy);
      heading = std::atan2(cy, cx);
    }
    Point2 step{kSmoothing * (target.x - uav.x), kSmoothing * (target.y - uav.y)};
    const double len = std::hypot(step.x, step.y);
    const double max_step = a.speed * dt;
    if (len > max_step) {
      step.x *= max_step / len;
      step.y *= max_step / len;
    }
    uav.x += step.x;
    uav.y += step.y;
    out.push_back(uav);
  }
  return out;
}

}  // namespace

std::string to_string(MissionKind kind) {
  switch (kind) {
    case MissionKind::overwatch_orbit: return "overwatch_orbit";
    case MissionKind::search_lawnmower: return "search_lawnmower";
    case MissionKind::perimeter_patrol: return "perimeter_patrol";
    case MissionKind::target_follow: return "target_follow";
  }
  return "overwatch_orbit";
}

MissionKind parse_mission_kind(const std::string& text) {
  for (auto k : all_mission_kinds()) {
    if (text == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown mission '" + text + "'");
}

const std::vector<MissionKind>& all_mission_kinds() {
  static const std::vector<MissionKind> kinds = {
      MissionKind::overwatch_orbit, MissionKind::search_lawnmower, MissionKind::perimeter_patrol,
      MissionKind::target_follow};
  return kinds;
}

void MissionArchetype::validate() const {
  if (!(area_width > 0.0 && area_height > 0.0)) throw std::invalid_argument("area must be > 0");
  if (!(speed > 0.0 && speed <= kMaxUavSpeed)) {
    throw std::invalid_argument("speed must be in (0, 20] m/s");
  }
  if (!(altitude > 0.0)) throw std::invalid_argument("altitude must be > 0");
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw std::invalid_argument("duration must be >= 0");
  }
}

MissionArchetype MissionArchetype::defaults(MissionKind kind) {
  MissionArchetype a;
  a.kind = kind;
  return a;
}

GeoPoint default_trace_origin() { return {0.0, 30.2672, -97.7431, 30.0}; }

double orbit_radius(const MissionArchetype& archetype) {
  return std::min(archetype.area_width, archetype.area_height) / 3.0;
}

FlightTrace synth_trace(const MissionArchetype& archetype, std::uint64_t seed,
                        const GeoPoint& origin) {
  archetype.validate();
  GeoPoint anchor = origin;
  anchor.t = 0.0;
  anchor.alt = archetype.altitude;

  if (archetype.duration <= 0.0) {
    const Vec3 start{0.0, 0.0, archetype.altitude};
    return FlightTrace(anchor, {{0.0, start}, {kDegenerateSpan, start}});
  }

  const auto times = waypoint_times(archetype.duration);
  std::vector<Point2> path;
  switch (archetype.kind) {
    case MissionKind::overwatch_orbit: path = orbit_path(archetype, times); break;
    case MissionKind::search_lawnmower: path = lawnmower_path(archetype, times); break;
    case MissionKind::perimeter_patrol: path = patrol_path(archetype, times); break;
    case MissionKind::target_follow: path = follow_path(archetype, times, seed); break;
  }

  std::vector<Waypoint> points;
  points.reserve(times.size());
  const Point2 first = path.front();
  for (std::size_t i = 0; i < times.size(); ++i) {
    points.push_back({times[i], {path[i].x - first.x, path[i].y - first.y, archetype.altitude}});
  }
  return FlightTrace(anchor, std::move(points));
}

}  // namespace uavsim
