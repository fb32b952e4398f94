#pragma once

// Link adaptation, transport-block sizing, block errors and HARQ.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uavsim/channel.hpp"

namespace uavsim {

struct McsEntry {
  int index = 0;
  int modulation_order = 2;  ///< bits per symbol
  double code_rate = 0.0;
  double spectral_efficiency = 0.0;  ///< bits/s/Hz
  double snr_threshold_db = 0.0;     ///< lowest SNR with BLER <= 0.1

  bool operator==(const McsEntry&) const = default;
};

using McsTable = std::vector<McsEntry>;

/// Extra SNR required on top of the Shannon bound by the default table.
inline constexpr double kImplementationMarginDb = 3.0;

/// 10*log10(2^se - 1) + margin.
double shannon_gap_threshold_db(double spectral_efficiency, double margin_db = kImplementationMarginDb);

/// The 29-entry QPSK/16QAM/64QAM ladder, SE 0.152 .. 5.5547.
const McsTable& default_mcs_table();

/// Throws std::invalid_argument if the table is empty, thresholds are not
/// strictly increasing, or se != mod_order * code_rate.
void validate(const McsTable& table);

void write_mcs_csv(std::ostream& out, const McsTable& table);
McsTable read_mcs_csv(std::istream& in);

/// Highest entry whose threshold is <= snr; nullopt is an outage slot.
std::optional<McsEntry> select_mcs(const McsTable& table, double snr_db);

enum class Rat { mmwave, lte };

std::string to_string(Rat rat);
Rat parse_rat(const std::string& text);

struct RatProfile {
  Rat rat = Rat::mmwave;
  LinkProfile link;
  double slot_duration = 125e-6;  ///< seconds
  double efficiency_factor = 1.0;
  int harq_rtt = 4;  ///< slots
  int max_harq_tx = 3;
  double scheduling_delay = 0.0;  ///< seconds added before a packet's first transmission

  void validate() const;
  std::string name() const { return to_string(rat); }
};

/// Peak PHY rates the default profiles are calibrated against.
inline constexpr double kMmwavePeakRate = 3.2e9;
inline constexpr double kLtePeakRate = 75.2e6;

/// 28 GHz, 1 GHz, 125 us slots, calibrated to 3.2 Gbps at the top MCS.
RatProfile mmwave_profile();
/// 2.1 GHz, 20 MHz, 1 ms TTI, 4 ms request/grant delay, calibrated to 75.2 Mbps.
RatProfile lte_profile();
RatProfile default_profile(Rat rat);

/// floor(se * bandwidth * slot * efficiency_factor)
std::int64_t tb_bits(const RatProfile& profile, const McsEntry& mcs);

/// Peak bits per second at the top entry of `table`.
double peak_phy_rate(const RatProfile& profile, const McsTable& table = default_mcs_table());

/// Logistic block-error curve anchored so that bler(threshold) ~= 0.1.
double bler(const McsEntry& mcs, double snr_db);

struct TransportBlock {
  std::int64_t bits = 0;
  int mcs = 0;
  std::int64_t created_slot = 0;
  int tx_count = 0;
};

enum class HarqOutcome { delivered, retransmit, dropped };

struct HarqDecision {
  HarqOutcome outcome = HarqOutcome::delivered;
  std::int64_t slot = 0;  ///< delivery slot, or slot of the scheduled retransmission
};

/// One transmission attempt of `tb` in `current_slot`. Success iff
/// `draw >= block_error_prob`; failures are retried `harq_rtt` slots later
/// until `max_harq_tx` attempts have been made.
HarqDecision harq_step(TransportBlock& tb, double block_error_prob, double draw,
                       std::int64_t current_slot, int harq_rtt, int max_harq_tx);

}  // namespace uavsim
