#include <doctest.h>

#include <cmath>

#include "uavsim/mission.hpp"

using namespace uavsim;

namespace {

double max_segment_speed(const FlightTrace& trace) {
  double v = 0.0;
  const auto& p = trace.points();
  for (std::size_t i = 1; i < p.size(); ++i) {
    v = std::max(v, (p[i].position - p[i - 1].position).norm() / (p[i].t - p[i - 1].t));
  }
  return v;
}

}  // namespace

TEST_CASE("mission names round trip") {
  for (auto k : all_mission_kinds()) CHECK(parse_mission_kind(to_string(k)) == k);
  CHECK(all_mission_kinds().size() == 4);
  CHECK_THROWS(parse_mission_kind("survey"));
}

TEST_CASE("archetype validation") {
  auto a = MissionArchetype::defaults(MissionKind::overwatch_orbit);
  CHECK_NOTHROW(a.validate());
  a.speed = 25.0;
  CHECK_THROWS(a.validate());
  a = MissionArchetype::defaults(MissionKind::overwatch_orbit);
  a.area_width = 0.0;
  CHECK_THROWS(a.validate());
  a = MissionArchetype::defaults(MissionKind::overwatch_orbit);
  a.duration = -1.0;
  CHECK_THROWS(a.validate());
  CHECK_THROWS(synth_trace(a, 1));
}

TEST_CASE("every archetype: 1 s waypoints, constant altitude, speed limit, starts at origin") {
  for (auto k : all_mission_kinds()) {
    CAPTURE(to_string(k));
    auto a = MissionArchetype::defaults(k);
    a.duration = 120.0;
    const auto trace = synth_trace(a, 3);
    REQUIRE(trace.size() == 121);
    CHECK(trace.points().front().position.x == 0.0);
    CHECK(trace.points().front().position.y == 0.0);
    for (std::size_t i = 0; i < trace.size(); ++i) {
      CHECK(trace.points()[i].t == doctest::Approx(static_cast<double>(i)));
      CHECK(trace.points()[i].position.z == a.altitude);
    }
    CHECK(max_segment_speed(trace) <= a.speed + 1e-9);
    CHECK(trace.origin().lat == doctest::Approx(default_trace_origin().lat));
  }
}

TEST_CASE("overwatch orbit stays on its circle") {
  auto a = MissionArchetype::defaults(MissionKind::overwatch_orbit);
  a.duration = 200.0;
  const double r = orbit_radius(a);
  CHECK(r == doctest::Approx(100.0));
  // Orbit period 2 pi r / v, evaluated independently.
  CHECK(2.0 * M_PI * r / a.speed == doctest::Approx(125.66370614359172));
  const auto trace = synth_trace(a, 1);
  // The first point is (r, 0) relative to the orbit centre.
  for (const auto& w : trace.points()) {
    const double dx = w.position.x + r;
    CHECK(std::hypot(dx, w.position.y) == doctest::Approx(r).epsilon(1e-9));
  }
}

TEST_CASE("lawnmower and patrol stay inside the area") {
  for (auto k : {MissionKind::search_lawnmower, MissionKind::perimeter_patrol, MissionKind::target_follow}) {
    auto a = MissionArchetype::defaults(k);
    a.duration = 600.0;
    const auto trace = synth_trace(a, 9);
    double min_x = 1e9, max_x = -1e9, min_y = 1e9, max_y = -1e9;
    for (const auto& w : trace.points()) {
      min_x = std::min(min_x, w.position.x);
      max_x = std::max(max_x, w.position.x);
      min_y = std::min(min_y, w.position.y);
      max_y = std::max(max_y, w.position.y);
    }
    CHECK(max_x - min_x <= a.area_width + 1e-9);
    CHECK(max_y - min_y <= a.area_height + 1e-9);
    CHECK(max_x - min_x > 0.0);
  }
}

TEST_CASE("target follow depends on the seed, others do not") {
  auto a = MissionArchetype::defaults(MissionKind::target_follow);
  a.duration = 60.0;
  const auto t1 = synth_trace(a, 1);
  const auto t1b = synth_trace(a, 1);
  const auto t2 = synth_trace(a, 2);
  CHECK(t1.points().back().position == t1b.points().back().position);
  CHECK_FALSE(t1.points().back().position == t2.points().back().position);

  auto p = MissionArchetype::defaults(MissionKind::perimeter_patrol);
  p.duration = 60.0;
  CHECK(synth_trace(p, 1).points().back().position == synth_trace(p, 2).points().back().position);
}

TEST_CASE("zero duration gives a degenerate hover") {
  auto a = MissionArchetype::defaults(MissionKind::overwatch_orbit);
  a.duration = 0.0;
  const auto trace = synth_trace(a, 1);
  REQUIRE(trace.size() == 2);
  CHECK(trace.points()[0].position == trace.points()[1].position);
}

TEST_CASE("fractional duration ends on the last instant") {
  auto a = MissionArchetype::defaults(MissionKind::perimeter_patrol);
  a.duration = 10.5;
  const auto trace = synth_trace(a, 1);
  CHECK(trace.size() == 12);
  CHECK(trace.points().back().t == doctest::Approx(10.5));
}
