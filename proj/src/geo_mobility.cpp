#include "uavsim/geo_mobility.hpp"

#include "uavsim/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace uavsim {

namespace {

double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }

double parse_double(std::string_view field, std::size_t line, const char* column) {
  double value = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end || field.empty()) {
    throw TraceParseError(line, std::string("invalid ") + column + " value '" +
                                    std::string(field) + "'");
  }
  return value;
}

}  // namespace

TraceParseError::TraceParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

void validate(const GeoPoint& p) {
  if (!std::isfinite(p.lat) || p.lat < -90.0 || p.lat > 90.0) {
    throw std::invalid_argument("latitude out of range [-90, 90]");
  }
  if (!std::isfinite(p.lon) || p.lon < -180.0 || p.lon > 180.0) {
    throw std::invalid_argument("longitude out of range [-180, 180]");
  }
  if (!std::isfinite(p.alt) || p.alt < 0.0) throw std::invalid_argument("altitude must be >= 0");
  if (!std::isfinite(p.t) || p.t < 0.0) throw std::invalid_argument("time must be >= 0");
}

FlightTrace::FlightTrace(GeoPoint origin, std::vector<Waypoint> points)
    : origin_(origin), points_(std::move(points)) {
  if (points_.size() < 2) throw TraceValidationError("trace needs at least 2 waypoints");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& w = points_[i];
    if (!std::isfinite(w.t) || !std::isfinite(w.position.x) || !std::isfinite(w.position.y) ||
        !std::isfinite(w.position.z)) {
      throw TraceValidationError("waypoint " + std::to_string(i) + " is not finite");
    }
    if (w.position.z < 0.0) {
      throw TraceValidationError("waypoint " + std::to_string(i) + " is below ground");
    }
    if (w.t < 0.0) throw TraceValidationError("negative waypoint time");
    if (i > 0 && !(w.t > points_[i - 1].t)) {
      throw TraceValidationError("waypoint times must be strictly increasing (index " +
                                 std::to_string(i) + ")");
    }
  }
}

Vec3 FlightTrace::centroid() const {
  double min_x = points_.front().position.x, max_x = min_x;
  double min_y = points_.front().position.y, max_y = min_y;
  double sum_z = 0.0;
  for (const auto& w : points_) {
    min_x = std::min(min_x, w.position.x);
    max_x = std::max(max_x, w.position.x);
    min_y = std::min(min_y, w.position.y);
    max_y = std::max(max_y, w.position.y);
    sum_z += w.position.z;
  }
  return {(min_x + max_x) / 2.0, (min_y + max_y) / 2.0,
          sum_z / static_cast<double>(points_.size())};
}

PlanarOffset latlon_to_xy(const GeoPoint& p, const GeoPoint& ref) {
  return {(p.lon - ref.lon) * kMetersPerDegree * std::cos(deg2rad(ref.lat)),
          (p.lat - ref.lat) * kMetersPerDegree};
}

GeoPoint xy_to_latlon(double x, double y, double alt, double t, const GeoPoint& ref) {
  return {t, ref.lat + y / kMetersPerDegree,
          ref.lon + x / (kMetersPerDegree * std::cos(deg2rad(ref.lat))), alt};
}

FlightTrace parse_trace(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!csv::trim(line).empty()) break;
  }
  if (csv::trim(line).empty()) throw TraceParseError(line_no, "missing header");
  const auto header = csv::split(line);
  if (header.size() != 4 || header[0] != "t_s" || header[1] != "lat_deg" ||
      header[2] != "lon_deg" || header[3] != "alt_m") {
    throw TraceParseError(line_no, "expected header 't_s,lat_deg,lon_deg,alt_m'");
  }

  std::vector<GeoPoint> fixes;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    const auto fields = csv::split(line);
    if (fields.size() != 4) {
      throw TraceParseError(line_no, "expected 4 columns, got " + std::to_string(fields.size()));
    }
    GeoPoint p{parse_double(fields[0], line_no, "t_s"), parse_double(fields[1], line_no, "lat_deg"),
               parse_double(fields[2], line_no, "lon_deg"),
               parse_double(fields[3], line_no, "alt_m")};
    try {
      validate(p);
    } catch (const std::invalid_argument& e) {
      throw TraceParseError(line_no, e.what());
    }
    if (!fixes.empty() && !(p.t > fixes.back().t)) {
      throw TraceValidationError("line " + std::to_string(line_no) +
                                 ": timestamps must be strictly increasing");
    }
    fixes.push_back(p);
  }
  if (fixes.size() < 2) throw TraceValidationError("trace needs at least 2 rows");

  const GeoPoint origin = fixes.front();
  std::vector<Waypoint> points;
  points.reserve(fixes.size());
  for (const auto& p : fixes) {
    const auto xy = latlon_to_xy(p, origin);
    points.push_back({p.t, {xy.x, xy.y, p.alt}});
  }
  return FlightTrace(origin, std::move(points));
}

FlightTrace parse_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace '" + path + "'");
  return parse_trace(in);
}

void write_trace_csv(std::ostream& out, const FlightTrace& trace) {
  const auto old_flags = out.flags();
  const auto old_precision = out.precision();
  out << "t_s,lat_deg,lon_deg,alt_m\n" << std::setprecision(17);
  for (const auto& w : trace.points()) {
    const auto g = xy_to_latlon(w.position.x, w.position.y, w.position.z, w.t, trace.origin());
    out << g.t << ',' << g.lat << ',' << g.lon << ',' << g.alt << '\n';
  }
  out.flags(old_flags);
  out.precision(old_precision);
}

FlightTrace decimate(const FlightTrace& trace, double min_spacing) {
  if (!(min_spacing > 0.0)) throw std::invalid_argument("min_spacing must be > 0");
  const auto& pts = trace.points();
  std::vector<Waypoint> kept{pts.front()};
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    if (pts[i].t - kept.back().t >= min_spacing) kept.push_back(pts[i]);
  }
  kept.push_back(pts.back());
  return FlightTrace(trace.origin(), std::move(kept));
}

MobilityState state_at(const FlightTrace& trace, double t) {
  const auto& pts = trace.points();
  if (t <= pts.front().t) return {pts.front().position, {}};
  if (t >= pts.back().t) return {pts.back().position, {}};

  // First waypoint strictly after t; the active segment ends there.
  const auto next = std::upper_bound(pts.begin(), pts.end(), t,
                                     [](double tv, const Waypoint& w) { return tv < w.t; });
  const auto& b = *next;
  const auto& a = *(next - 1);
  const double dt = b.t - a.t;
  const Vec3 velocity = (b.position - a.position) / dt;
  return {a.position + velocity * (t - a.t), velocity};
}

}  // namespace uavsim
