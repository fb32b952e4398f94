#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "properties.hpp"
#include "uavsim/geo_mobility.hpp"
#include "uavsim/report.hpp"

using namespace uavsim;

namespace {

struct Fixture {
  std::vector<ScenarioConfig> configs = props::random_scenarios(20261018, 8, 0.5);
  std::vector<MetricsLog> logs;
  Fixture() {
    for (const auto& c : configs) logs.push_back(run(c));
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

}  // namespace

TEST_CASE("link-budget identity holds on every sample") {
  for (const auto& log : fixture().logs) CHECK(props::link_budget_identity(log) == "");
}

TEST_CASE("SNR does not depend on UAV velocity") { CHECK(props::doppler_invariance(5, 2000) == ""); }

TEST_CASE("tracked gain never exceeds a fresh search") {
  const auto& f = fixture();
  for (std::size_t i = 0; i < f.configs.size(); ++i) CHECK(props::tracked_le_best(f.configs[i], f.logs[i]) == "");
}

TEST_CASE("packet conservation and the peak-rate bound") {
  const auto& f = fixture();
  for (std::size_t i = 0; i < f.configs.size(); ++i) CHECK(props::conservation(f.configs[i], f.logs[i]) == "");
}

TEST_CASE("MCS selection is monotone") { CHECK(props::monotone_mcs(17, 100000) == ""); }

TEST_CASE("reruns under a fixed seed are bit-identical") {
  const auto& f = fixture();
  for (std::size_t i = 0; i < 3; ++i) CHECK(props::rerun_identical(f.configs[i], f.logs[i]) == "");
}

TEST_CASE("closed-form oracles over random inputs") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(1.0, 10000.0);
  std::uniform_real_distribution<double> freq(0.5, 100.0);
  std::uniform_real_distribution<double> speed(-50.0, 50.0);
  for (int i = 0; i < 10000; ++i) {
    const double d = dist(rng), f = freq(rng), v = speed(rng);
    const double fspl = 20.0 * std::log10(d) + 20.0 * std::log10(f) + 32.4;
    CHECK(std::abs(fspl_db(d, f) - fspl) < 1e-9);
    CHECK(std::abs(doppler_shift(v, f) - v * f * 1e9 / 299792458.0) < 1e-6);
  }
}

TEST_CASE("Parseval over random arrays and directions") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> dim(1, 8);
  std::uniform_real_distribution<double> az(-M_PI, M_PI);
  std::uniform_real_distribution<double> el(-M_PI / 2, M_PI / 2);
  for (int i = 0; i < 50; ++i) {
    const ArrayConfig a{dim(rng), dim(rng)};
    const Geometry g{az(rng), el(rng)};
    double sum = 0.0;
    for (const auto& b : dft_codebook(a)) sum += std::pow(10.0, beam_gain_db(a, b, g) / 10.0);
    CHECK(std::abs(sum - a.size()) < 1e-9);
  }
}

TEST_CASE("decimation is idempotent on synthetic traces") {
  for (auto k : all_mission_kinds()) {
    auto a = MissionArchetype::defaults(k);
    a.duration = 100.0;
    const auto trace = synth_trace(a, 2);
    for (double s : {0.5, 1.0, 2.5, 7.0}) {
      const auto once = decimate(trace, s);
      const auto twice = decimate(once, s);
      REQUIRE(once.size() == twice.size());
      for (std::size_t i = 0; i < once.size(); ++i) CHECK(once.points()[i].t == twice.points()[i].t);
    }
  }
}

TEST_CASE("report and MCS CSVs round-trip random values exactly") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 2000.0);
  std::vector<SummaryRow> rows;
  for (int i = 0; i < 200; ++i) {
    rows.push_back({"target_follow", "mmwave", "16x4", u(rng), "distant_2km", u(rng), u(rng), u(rng), u(rng) / 2000.0});
  }
  std::stringstream buf;
  write_report_csv(buf, rows);
  CHECK(read_report_csv(buf) == rows);

  std::stringstream mcs;
  write_mcs_csv(mcs, default_mcs_table());
  CHECK(read_mcs_csv(mcs) == default_mcs_table());
}
