#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "uavsim/channel.hpp"

using namespace uavsim;

TEST_CASE("fspl_db reference values") {
  // Values from an independent evaluation of 32.4 + 20 log10(d) + 20 log10(fc).
  CHECK(fspl_db(1.0, 28.0) == doctest::Approx(61.34316062684438).epsilon(1e-12));
  CHECK(fspl_db(100.0, 28.0) == doctest::Approx(101.3431606268444).epsilon(1e-12));
  CHECK(fspl_db(100.0, 2.1) == doctest::Approx(78.8443858946784).epsilon(1e-12));
  CHECK(fspl_db(0.2, 28.0) == fspl_db(1.0, 28.0));
}

TEST_CASE("fspl_db is monotone and doubling distance adds 6.02 dB") {
  CHECK(fspl_db(200.0, 28.0) - fspl_db(100.0, 28.0) == doctest::Approx(20.0 * std::log10(2.0)));
  CHECK(20.0 * std::log10(2.0) == doctest::Approx(6.02).epsilon(1e-3));
  double prev = fspl_db(1.0, 28.0);
  for (double d = 2.0; d < 5000.0; d *= 1.3) {
    CHECK(fspl_db(d, 28.0) > prev);
    CHECK(fspl_db(d, 28.0) > fspl_db(d, 2.1));
    prev = fspl_db(d, 28.0);
  }
}

TEST_CASE("doppler_shift") {
  CHECK(doppler_shift(0.0, 28.0) == 0.0);
  CHECK(doppler_shift(10.0, 28.0) == doctest::Approx(933.9794665548258).epsilon(1e-12));
  CHECK(doppler_shift(-10.0, 28.0) == -doppler_shift(10.0, 28.0));
}

TEST_CASE("noise floor") {
  CHECK(noise_floor_dbm(1e9, 5.0) == doctest::Approx(-79.0).epsilon(1e-12));
  CHECK(noise_floor_dbm(20e6, 5.0) == doctest::Approx(-95.98970004336019).epsilon(1e-12));
}

TEST_CASE("sample_channel link budget") {
  const LinkProfile mm{28.0, 1e9, 30.0, 5.0};
  ShadowingField none({0.0, 10.0, 1});
  const MobilityState ue{{100.0, 0.0, 25.0}, {}};
  const double gains = 10.0 * std::log10(64.0) + 10.0 * std::log10(16.0);

  const auto s = sample_channel(mm, ue, {0.0, 0.0, 25.0}, gains / 2.0, gains / 2.0, none, 0.0);
  CHECK(s.distance_3d == doctest::Approx(100.0));
  CHECK(s.shadowing_db == 0.0);
  // 30 + 30.103 - 101.343 + 79.000, evaluated independently.
  CHECK(s.snr_db == doctest::Approx(37.759838939553724).epsilon(1e-12));
  CHECK(s.snr_db == doctest::Approx(link_budget_snr(s)));
  CHECK(s.doppler_hz == 0.0);

  SUBCASE("degenerate budget: no gains, no pathloss") {
    ChannelSample d = s;
    d.tx_gain_db = d.rx_gain_db = d.pathloss_db = d.shadowing_db = 0.0;
    CHECK(link_budget_snr(d) == doctest::Approx(30.0 - noise_floor_dbm(1e9, 5.0)));
  }
}

TEST_CASE("sample_channel doppler sign and SNR invariance") {
  const LinkProfile mm{28.0, 1e9, 30.0, 5.0};
  const Vec3 bs{0.0, 0.0, 25.0};
  ShadowingField f1({4.0, 10.0, 3});
  ShadowingField f2({4.0, 10.0, 3});
  const MobilityState approaching{{100.0, 0.0, 25.0}, {-10.0, 0.0, 0.0}};
  const MobilityState receding{{100.0, 0.0, 25.0}, {10.0, 0.0, 0.0}};
  const auto a = sample_channel(mm, approaching, bs, 3.0, 4.0, f1, 0.25);
  const auto r = sample_channel(mm, receding, bs, 3.0, 4.0, f2, 0.25);
  CHECK(a.doppler_hz == doctest::Approx(933.9794665548258));
  CHECK(r.doppler_hz == doctest::Approx(-933.9794665548258));
  CHECK(a.snr_db == r.snr_db);
  CHECK(std::abs(a.coefficient) == doctest::Approx(std::abs(r.coefficient)));
  CHECK(std::arg(a.coefficient) != doctest::Approx(std::arg(r.coefficient)));
}

TEST_CASE("shadowing field: determinism and repeat queries") {
  ShadowingField a({4.0, 10.0, 42});
  ShadowingField b({4.0, 10.0, 42});
  std::vector<double> va, vb;
  for (int i = 0; i < 100; ++i) {
    const Vec3 p{i * 0.7, std::sin(i * 0.1) * 30.0, 30.0};
    va.push_back(a.at(p));
    vb.push_back(b.at(p));
    CHECK(a.at(p) == va.back());  // same position again
  }
  CHECK(va == vb);
  CHECK_THROWS(ShadowingField({-1.0, 10.0, 1}));
  CHECK_THROWS(ShadowingField({4.0, 0.0, 1}));
}

TEST_CASE("shadowing field: marginal std and decorrelation (Monte Carlo)") {
  const double sigma = 4.0;
  const double dcorr = 10.0;

  // Widely separated positions: each query is effectively an independent draw.
  ShadowingField field({sigma, dcorr, 2024});
  const int n = 10000;
  double sum = 0.0, sum2 = 0.0;
  std::vector<double> values;
  for (int i = 0; i < n; ++i) {
    const double v = field.at({i * 1000.0, 0.0, 30.0});
    values.push_back(v);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sum2 / n - mean * mean);
  CHECK(sd == doctest::Approx(sigma).epsilon(0.05));
  CHECK(std::abs(mean) < 0.2);

  // Pairs separated by 10 decorrelation distances.
  ShadowingField walk({sigma, dcorr, 99});
  std::vector<double> xs, ys;
  for (int i = 0; i < n; ++i) {
    xs.push_back(walk.at({i * 10.0 * dcorr, 0.0, 30.0}));
  }
  for (int i = 0; i + 1 < n; ++i) ys.push_back(xs[static_cast<std::size_t>(i + 1)]);
  xs.pop_back();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double cxy = 0, cxx = 0, cyy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    cxy += (xs[i] - mx) * (ys[i] - my);
    cxx += (xs[i] - mx) * (xs[i] - mx);
    cyy += (ys[i] - my) * (ys[i] - my);
  }
  CHECK(std::abs(cxy / std::sqrt(cxx * cyy)) < 0.05);

  // Short separation stays strongly correlated: lag-1 at d = dcorr/10.
  ShadowingField near({sigma, dcorr, 5});
  std::vector<double> zs;
  for (int i = 0; i < n; ++i) zs.push_back(near.at({i * 1.0, 0.0, 30.0}));
  double m = 0;
  for (double z : zs) m += z;
  m /= n;
  double c0 = 0, c1 = 0;
  for (int i = 0; i < n; ++i) c0 += (zs[i] - m) * (zs[i] - m);
  for (int i = 0; i + 1 < n; ++i) c1 += (zs[i] - m) * (zs[i + 1] - m);
  CHECK(c1 / c0 == doctest::Approx(std::exp(-0.1)).epsilon(0.03));
}
