// Acceptance runner: one [PASS]/[FAIL] line per criterion, nonzero exit on
// any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "../properties.hpp"
#include "uavsim/metrics.hpp"
#include "uavsim/scenario.hpp"

using namespace uavsim;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct RunKey {
  MissionKind mission;
  Rat rat;
  int bs_elements;
  int uav_elements;
  double rate_mbps;
  BsPlacement placement;
  auto operator<=>(const RunKey&) const = default;
};

struct RunResult {
  Summary summary;
  double wall_s = 0.0;
};

// 60 s window, seed 1, default archetype geometry.
const RunResult& simulate(const RunKey& key) {
  static std::map<RunKey, RunResult> cache;
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  Settings s;
  s.mission = MissionArchetype::defaults(key.mission);
  s.window_s = 60.0;
  s.seed = 1;
  const auto start = Clock::now();
  auto trace = std::make_shared<const FlightTrace>(synth_trace(s.mission, s.seed));
  const auto cfg =
      make_scenario(trace, key.rat, {key.bs_elements, key.uav_elements}, key.rate_mbps, key.placement, s);
  RunResult r;
  r.summary = summarize(run(cfg));
  r.wall_s = seconds_since(start);
  return cache.emplace(key, r).first->second;
}

constexpr auto kPatrol = MissionKind::perimeter_patrol;
constexpr auto kOn = BsPlacement::on_premise;
constexpr auto kFar = BsPlacement::distant_2km;

Outcome criterion1() {
  const auto& r = simulate({kPatrol, Rat::mmwave, 64, 16, 10.0, kOn});
  const double mbps = r.summary.throughput_bps / 1e6;
  const bool ok = std::abs(mbps - 10.19) <= 0.05 && r.wall_s < 5.0;
  return {ok, "throughput " + fmt("%.4f", mbps) + " Mbps (10.19 +/- 0.05), runtime " + fmt("%.2f", r.wall_s) +
                  " s (< 5)"};
}

Outcome criterion2() {
  bool ok = true;
  std::string detail;
  for (auto k : all_mission_kinds()) {
    const auto& r = simulate({k, Rat::mmwave, 64, 16, 1000.0, kOn});
    const double mbps = r.summary.throughput_bps / 1e6;
    const double ms = r.summary.mean_latency * 1e3;
    const bool cell = mbps >= 1010.0 && ms < 1.0 && r.wall_s < 600.0;
    ok = ok && cell;
    detail += to_string(k) + ": " + fmt("%.2f", mbps) + " Mbps, " + fmt("%.3f", ms) + " ms, " +
              fmt("%.1f", r.wall_s) + " s; ";
  }
  return {ok, detail + "(>= 1010 Mbps, < 1 ms, < 600 s each)"};
}

Outcome criterion3() {
  const auto& r = simulate({kPatrol, Rat::lte, 1, 1, 1000.0, kOn});
  const double mbps = r.summary.throughput_bps / 1e6;
  const double ms = r.summary.mean_latency * 1e3;
  const bool ok = std::abs(mbps - 75.2) <= 3.0 && std::abs(ms - 116.0) <= 0.25 * 116.0;
  return {ok, "throughput " + fmt("%.2f", mbps) + " Mbps (75.2 +/- 3), mean latency " + fmt("%.2f", ms) +
                  " ms (116 +/- 29)"};
}

Outcome criterion4() {
  const auto& r = simulate({kPatrol, Rat::lte, 1, 1, 10.0, kOn});
  const double ms = r.summary.mean_latency * 1e3;
  return {std::abs(ms - 5.3) <= 1.5, "mean latency " + fmt("%.3f", ms) + " ms (5.3 +/- 1.5)"};
}

Outcome criterion5() {
  const Geometry broadside{0.0, 0.0};
  const double big = best_beam_pair(ArrayConfig::from_element_count(64), ArrayConfig::from_element_count(16),
                                    broadside, broadside, 0.0)
                         .combined_gain_db();
  const double small = best_beam_pair(ArrayConfig::from_element_count(16), ArrayConfig::from_element_count(4),
                                      broadside, broadside, 0.0)
                           .combined_gain_db();
  const double aligned_gap = big - small;
  bool ok = std::abs(aligned_gap - 10.0 * std::log10(16.0)) < 1e-9;
  std::string detail = "aligned gap " + fmt("%.6f", aligned_gap) + " dB (12.041200); tracked SNR gap ";
  for (auto k : all_mission_kinds()) {
    const double gap = simulate({k, Rat::mmwave, 64, 16, 10.0, kOn}).summary.mean_snr_db -
                       simulate({k, Rat::mmwave, 16, 4, 10.0, kOn}).summary.mean_snr_db;
    ok = ok && gap >= 8.0 && gap <= 13.0;
    detail += to_string(k) + " " + fmt("%.2f", gap) + " dB; ";
  }
  return {ok, detail + "(each in [8, 13])"};
}

Outcome criterion6() {
  const double a = simulate({kPatrol, Rat::mmwave, 64, 16, 1000.0, kOn}).summary.mean_latency * 1e3;
  const double b = simulate({kPatrol, Rat::mmwave, 16, 4, 1000.0, kOn}).summary.mean_latency * 1e3;
  const double c = simulate({kPatrol, Rat::mmwave, 64, 16, 1000.0, kFar}).summary.mean_latency * 1e3;
  const double d = simulate({kPatrol, Rat::mmwave, 16, 4, 1000.0, kFar}).summary.mean_latency * 1e3;
  const bool ordered = a < b && b < c && c < d;
  const double ratio_big = c / a;
  const double ratio_small = d / b;
  const bool ok = ordered && ratio_big > 5.0 && ratio_small > 5.0;
  return {ok, "on_premise 64x16 " + fmt("%.3f", a) + " < on_premise 16x4 " + fmt("%.3f", b) +
                  " < distant 64x16 " + fmt("%.3f", c) + " < distant 16x4 " + fmt("%.3f", d) +
                  " ms; distant/on_premise " + fmt("%.1f", ratio_big) + "x (64x16), " +
                  fmt("%.1f", ratio_small) + "x (16x4) (> 5x)"};
}

Outcome criterion7() {
  const auto start = Clock::now();
  std::vector<std::string> failures;
  auto note = [&](const std::string& name, const std::string& err) {
    if (!err.empty()) failures.push_back(name + ": " + err);
  };
  const auto configs = props::random_scenarios(7, 12, 1.0);
  std::size_t samples = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto log = run(configs[i]);
    samples += log.snr_series.size();
    note("link budget", props::link_budget_identity(log));
    note("tracked gain", props::tracked_le_best(configs[i], log));
    note("conservation", props::conservation(configs[i], log));
    if (i < 4) note("rerun", props::rerun_identical(configs[i], log));
  }
  note("doppler", props::doppler_invariance(11, 10000));
  note("mcs", props::monotone_mcs(13, 100000));
  const double wall = seconds_since(start);
  const bool ok = failures.empty() && wall < 60.0;
  std::string detail = std::to_string(configs.size()) + " scenarios, " + std::to_string(samples) +
                       " channel samples, " + fmt("%.1f", wall) + " s (< 60)";
  for (const auto& f : failures) detail += "; " + f;
  return {ok, detail};
}

Outcome criterion8() {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> dist(1.0, 20000.0);
  std::uniform_real_distribution<double> freq(0.1, 100.0);
  std::uniform_real_distribution<double> speed(-100.0, 100.0);
  double worst_fspl = 0.0, worst_doppler = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double d = dist(rng), f = freq(rng), v = speed(rng);
    worst_fspl = std::max(worst_fspl, std::abs(fspl_db(d, f) - (32.4 + 20.0 * std::log10(d) + 20.0 * std::log10(f))));
    worst_doppler = std::max(worst_doppler, std::abs(doppler_shift(v, f) - v * f * 1e9 / 299792458.0));
  }

  double worst_orth = 0.0, worst_parseval = 0.0;
  std::uniform_real_distribution<double> az(-M_PI, M_PI);
  std::uniform_real_distribution<double> el(-M_PI / 2, M_PI / 2);
  for (int n : {4, 16, 64}) {
    const auto a = ArrayConfig::from_element_count(n);
    const auto cb = dft_codebook(a);
    for (std::size_t i = 0; i < cb.size(); ++i) {
      for (std::size_t j = 0; j < cb.size(); ++j) {
        std::complex<double> ip = 0.0;
        for (std::size_t e = 0; e < cb[i].weights.size(); ++e) ip += std::conj(cb[i].weights[e]) * cb[j].weights[e];
        worst_orth = std::max(worst_orth, std::abs(ip - (i == j ? 1.0 : 0.0)));
      }
    }
    for (int k = 0; k < 200; ++k) {
      const Geometry g{az(rng), el(rng)};
      double sum = 0.0;
      for (const auto& b : cb) sum += std::pow(10.0, beam_gain_db(a, b, g) / 10.0);
      worst_parseval = std::max(worst_parseval, std::abs(sum - n));
    }
  }
  const bool ok = worst_fspl <= 1e-9 && worst_doppler <= 1e-6 && worst_orth <= 1e-9 && worst_parseval <= 1e-9;
  std::ostringstream os;
  os << "max |fspl err| " << worst_fspl << " dB, max |doppler err| " << worst_doppler << " Hz, max |<w_i,w_j> - d_ij| "
     << worst_orth << ", max |sum gain - N| " << worst_parseval;
  return {ok, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 header-overhead throughput identity", criterion1},
      {"2 full-rate mmWave delivery", criterion2},
      {"3 LTE saturation", criterion3},
      {"4 LTE unloaded latency", criterion4},
      {"5 antenna-gain gap", criterion5},
      {"6 distance ordering", criterion6},
      {"7 property suite", criterion7},
      {"8 oracle checks", criterion8},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
