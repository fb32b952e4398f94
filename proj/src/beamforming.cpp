#include "uavsim/beamforming.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <limits>
#include <stdexcept>

namespace uavsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::complex<double> inner_product(const ComplexVector& w, const ComplexVector& a) {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < w.size(); ++i) acc += std::conj(w[i]) * a[i];
  return acc;
}

int parse_positive(std::string_view s, std::string_view whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || value < 1) {
    throw std::invalid_argument("invalid antenna combination '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

void ArrayConfig::validate() const {
  if (n_h < 1 || n_v < 1) throw std::invalid_argument("array dimensions must be >= 1");
  if (!(spacing > 0.0)) throw std::invalid_argument("element spacing must be > 0");
}

ArrayConfig ArrayConfig::from_element_count(int elements) {
  if (elements < 1) throw std::invalid_argument("element count must be >= 1");
  int n_v = static_cast<int>(std::sqrt(static_cast<double>(elements)));
  while (elements % n_v != 0) --n_v;
  return {elements / n_v, n_v, 0.5};
}

AntennaCombo AntennaCombo::parse(std::string_view text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string_view::npos) {
    throw std::invalid_argument("invalid antenna combination '" + std::string(text) +
                                "' (expected e.g. 64x16)");
  }
  return {parse_positive(text.substr(0, x), text), parse_positive(text.substr(x + 1), text)};
}

std::string AntennaCombo::to_string() const {
  return std::to_string(bs_elements) + "x" + std::to_string(uav_elements);
}

ArrayFrame ArrayFrame::facing(const Vec3& direction) {
  ArrayFrame f;
  f.boresight = direction.normalized();
  if (f.boresight.norm() == 0.0) return {};
  Vec3 h = Vec3{0.0, 0.0, 1.0}.cross(f.boresight);
  if (h.norm() < 1e-9) h = {1.0, 0.0, 0.0};  // boresight is vertical
  f.horizontal = h.normalized();
  f.vertical = f.boresight.cross(f.horizontal).normalized();
  return f;
}

Geometry ArrayFrame::geometry_toward(const Vec3& target_direction) const {
  const Vec3 d = target_direction.normalized();
  const double along_h = d.dot(horizontal);
  const double along_v = std::clamp(d.dot(vertical), -1.0, 1.0);
  Geometry g;
  g.azimuth = std::atan2(along_h, d.dot(boresight));
  if (g.azimuth <= -std::numbers::pi) g.azimuth = std::numbers::pi;
  g.elevation = std::asin(along_v);
  return g;
}

ComplexVector steering_vector(const ArrayConfig& array, const Geometry& geom) {
  const int n = array.size();
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  const double u = std::sin(geom.azimuth) * std::cos(geom.elevation);
  const double v = std::sin(geom.elevation);
  ComplexVector out(static_cast<std::size_t>(n));
  for (int q = 0; q < array.n_v; ++q) {
    for (int p = 0; p < array.n_h; ++p) {
      const double phase = kTwoPi * array.spacing * (p * u + q * v);
      out[static_cast<std::size_t>(q * array.n_h + p)] = std::polar(norm, phase);
    }
  }
  return out;
}

Codebook dft_codebook(const ArrayConfig& array) {
  array.validate();
  const int n = array.size();
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  Codebook book;
  book.reserve(static_cast<std::size_t>(n));
  for (int l = 0; l < array.n_v; ++l) {
    for (int k = 0; k < array.n_h; ++k) {
      Beam beam{static_cast<std::size_t>(l * array.n_h + k), ComplexVector(static_cast<std::size_t>(n))};
      for (int q = 0; q < array.n_v; ++q) {
        for (int p = 0; p < array.n_h; ++p) {
          const double phase = kTwoPi * (static_cast<double>(p * k) / array.n_h +
                                         static_cast<double>(q * l) / array.n_v);
          beam.weights[static_cast<std::size_t>(q * array.n_h + p)] = std::polar(norm, phase);
        }
      }
      book.push_back(std::move(beam));
    }
  }
  return book;
}

double beam_gain_db(const ArrayConfig& array, const Beam& beam, const Geometry& geom) {
  const auto response = steering_vector(array, geom);
  const double linear = array.size() * std::norm(inner_product(beam.weights, response));
  if (linear < 1e-20) return kGainFloorDb;
  return 10.0 * std::log10(linear);
}

BeamPair best_beam_pair(const ArrayConfig& bs_array, const Codebook& bs_codebook,
                        const ArrayConfig& uav_array, const Codebook& uav_codebook,
                        const Geometry& bs_geom, const Geometry& uav_geom, double t) {
  if (bs_codebook.empty() || uav_codebook.empty()) throw std::invalid_argument("empty codebook");
  std::vector<double> tx_gains;
  tx_gains.reserve(bs_codebook.size());
  for (const auto& beam : bs_codebook) tx_gains.push_back(beam_gain_db(bs_array, beam, bs_geom));
  std::vector<double> rx_gains;
  rx_gains.reserve(uav_codebook.size());
  for (const auto& beam : uav_codebook) rx_gains.push_back(beam_gain_db(uav_array, beam, uav_geom));

  BeamPair best;
  best.selected_at = t;
  double best_total = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < tx_gains.size(); ++i) {
    for (std::size_t j = 0; j < rx_gains.size(); ++j) {
      const double total = tx_gains[i] + rx_gains[j];
      if (total > best_total) {
        best_total = total;
        best.tx_index = i;
        best.rx_index = j;
      }
    }
  }
  best.tx_gain_db = tx_gains[best.tx_index];
  best.rx_gain_db = rx_gains[best.rx_index];
  return best;
}

BeamPair best_beam_pair(const ArrayConfig& bs_array, const ArrayConfig& uav_array,
                        const Geometry& bs_geom, const Geometry& uav_geom, double t) {
  return best_beam_pair(bs_array, dft_codebook(bs_array), uav_array, dft_codebook(uav_array),
                        bs_geom, uav_geom, t);
}

BeamTracker::BeamTracker(ArrayConfig bs_array, ArrayConfig uav_array, double update_period)
    : bs_array_(bs_array),
      uav_array_(uav_array),
      bs_codebook_(dft_codebook(bs_array)),
      uav_codebook_(dft_codebook(uav_array)),
      update_period_(update_period) {
  if (!(update_period_ > 0.0)) throw std::invalid_argument("beam update period must be > 0");
}

BeamTracker::Gains BeamTracker::gains(double t, const Geometry& bs_geom, const Geometry& uav_geom) {
  // The small offset absorbs rounding when t is an exact multiple of the period.
  const auto epoch = static_cast<long long>(std::floor(t / update_period_ + 1e-9));
  if (epoch != epoch_) {
    epoch_ = epoch;
    pair_ = best_beam_pair(bs_array_, bs_codebook_, uav_array_, uav_codebook_, bs_geom, uav_geom,
                           static_cast<double>(epoch) * update_period_);
    return {pair_.tx_gain_db, pair_.rx_gain_db, true};
  }
  return {beam_gain_db(bs_array_, bs_codebook_[pair_.tx_index], bs_geom),
          beam_gain_db(uav_array_, uav_codebook_[pair_.rx_index], uav_geom), false};
}

}  // namespace uavsim
