#include "uavsim/phy_mac.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string_view>

#include "uavsim/csv.hpp"

namespace uavsim {

namespace {

// Spectral efficiencies of the classic 29-step LTE-style AMC ladder. The end
// points are the exact CQI 1 and CQI 15 values (78/1024 QPSK, 948/1024 64QAM).
constexpr std::array<double, 29> kLadderSe = {
    2.0 * 78.0 / 1024.0, 0.19, 0.23, 0.31, 0.38, 0.49, 0.60, 0.74, 0.88, 1.03,
    1.18, 1.33, 1.48, 1.70, 1.91, 2.16, 2.41,
    2.57, 2.73, 3.03, 3.32, 3.61, 3.90, 4.21, 4.52, 4.82, 5.12, 5.33, 6.0 * 948.0 / 1024.0};

int ladder_modulation(int index) {
  if (index <= 9) return 2;
  if (index <= 16) return 4;
  return 6;
}

McsTable build_default_table() {
  McsTable table;
  for (int i = 0; i < static_cast<int>(kLadderSe.size()); ++i) {
    const double se = kLadderSe[static_cast<std::size_t>(i)];
    const int mod = ladder_modulation(i);
    table.push_back({i, mod, se / mod, se, shannon_gap_threshold_db(se)});
  }
  return table;
}

// BLER curve: midpoint 1.1 dB below threshold, 0.5 dB slope.
constexpr double kBlerSlopeDb = 0.5;
constexpr double kBlerMidpointOffsetDb = 1.1;
constexpr double kBlerFloor = 1e-6;

}  // namespace

double shannon_gap_threshold_db(double spectral_efficiency, double margin_db) {
  return 10.0 * std::log10(std::exp2(spectral_efficiency) - 1.0) + margin_db;
}

const McsTable& default_mcs_table() {
  static const McsTable table = build_default_table();
  return table;
}

void validate(const McsTable& table) {
  if (table.empty()) throw std::invalid_argument("MCS table is empty");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& e = table[i];
    if (std::abs(e.spectral_efficiency - e.modulation_order * e.code_rate) >
        1e-9 * std::max(1.0, e.spectral_efficiency)) {
      throw std::invalid_argument("MCS " + std::to_string(e.index) +
                                  ": spectral efficiency != modulation order * code rate");
    }
    if (i > 0 && !(e.snr_threshold_db > table[i - 1].snr_threshold_db)) {
      throw std::invalid_argument("MCS thresholds must be strictly increasing");
    }
  }
}

void write_mcs_csv(std::ostream& out, const McsTable& table) {
  out << "index,mod_order,code_rate,se,snr_threshold_db\n";
  for (const auto& e : table) {
    out << e.index << ',' << e.modulation_order << ',' << csv::format_double(e.code_rate) << ','
        << csv::format_double(e.spectral_efficiency) << ','
        << csv::format_double(e.snr_threshold_db) << '\n';
  }
}

McsTable read_mcs_csv(std::istream& in) {
  const auto rows = csv::read(in, {"index", "mod_order", "code_rate", "se", "snr_threshold_db"});
  McsTable table;
  for (const auto& row : rows) {
    table.push_back({static_cast<int>(csv::parse_int(row.fields[0], row.line)),
                     static_cast<int>(csv::parse_int(row.fields[1], row.line)),
                     csv::parse_double(row.fields[2], row.line),
                     csv::parse_double(row.fields[3], row.line),
                     csv::parse_double(row.fields[4], row.line)});
  }
  validate(table);
  return table;
}

std::optional<McsEntry> select_mcs(const McsTable& table, double snr_db) {
  // Thresholds are sorted: the answer is the entry just before the first
  // threshold that exceeds snr.
  const auto above = std::upper_bound(
      table.begin(), table.end(), snr_db,
      [](double snr, const McsEntry& e) { return snr < e.snr_threshold_db; });
  if (above == table.begin()) return std::nullopt;
  return *(above - 1);
}

std::string to_string(Rat rat) { return rat == Rat::mmwave ? "mmwave" : "lte"; }

Rat parse_rat(const std::string& text) {
  if (text == "mmwave") return Rat::mmwave;
  if (text == "lte") return Rat::lte;
  throw std::invalid_argument("unknown profile '" + text + "' (expected mmwave or lte)");
}

void RatProfile::validate() const {
  link.validate();
  if (!(slot_duration > 0.0)) throw std::invalid_argument("slot duration must be > 0");
  if (!(efficiency_factor > 0.0 && efficiency_factor <= 1.0)) {
    throw std::invalid_argument("efficiency factor must be in (0, 1]");
  }
  if (harq_rtt < 1) throw std::invalid_argument("HARQ RTT must be >= 1 slot");
  if (max_harq_tx < 1) throw std::invalid_argument("max HARQ transmissions must be >= 1");
  if (scheduling_delay < 0.0) throw std::invalid_argument("scheduling delay must be >= 0");
}

RatProfile mmwave_profile() {
  RatProfile p;
  p.rat = Rat::mmwave;
  p.link = {28.0, 1e9, 30.0, 5.0};
  p.slot_duration = 125e-6;
  p.efficiency_factor = kMmwavePeakRate / (default_mcs_table().back().spectral_efficiency * 1e9);
  p.harq_rtt = 4;
  p.max_harq_tx = 3;
  p.scheduling_delay = 250e-6;
  return p;
}

RatProfile lte_profile() {
  RatProfile p;
  p.rat = Rat::lte;
  p.link = {2.1, 20e6, 30.0, 5.0};
  p.slot_duration = 1e-3;
  p.efficiency_factor = kLtePeakRate / (default_mcs_table().back().spectral_efficiency * 20e6);
  p.harq_rtt = 4;
  p.max_harq_tx = 3;
  p.scheduling_delay = 4e-3;
  return p;
}

RatProfile default_profile(Rat rat) { return rat == Rat::mmwave ? mmwave_profile() : lte_profile(); }

std::int64_t tb_bits(const RatProfile& profile, const McsEntry& mcs) {
  const double raw = mcs.spectral_efficiency * profile.link.bandwidth_hz * profile.slot_duration *
                     profile.efficiency_factor;
  // Guard against calibrated products landing a hair below an integer.
  return static_cast<std::int64_t>(std::floor(raw * (1.0 + 1e-12)));
}

double peak_phy_rate(const RatProfile& profile, const McsTable& table) {
  return static_cast<double>(tb_bits(profile, table.back())) / profile.slot_duration;
}

double bler(const McsEntry& mcs, double snr_db) {
  const double midpoint = mcs.snr_threshold_db - kBlerMidpointOffsetDb;
  const double p = 1.0 / (1.0 + std::exp((snr_db - midpoint) / kBlerSlopeDb));
  return std::clamp(p, kBlerFloor, 1.0 - kBlerFloor);
}

HarqDecision harq_step(TransportBlock& tb, double block_error_prob, double draw,
                       std::int64_t current_slot, int harq_rtt, int max_harq_tx) {
  ++tb.tx_count;
  if (draw >= block_error_prob) return {HarqOutcome::delivered, current_slot};
  if (tb.tx_count >= max_harq_tx) return {HarqOutcome::dropped, current_slot};
  return {HarqOutcome::retransmit, current_slot + harq_rtt};
}

}  // namespace uavsim
