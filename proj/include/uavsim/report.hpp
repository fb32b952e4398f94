#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "uavsim/metrics.hpp"

namespace uavsim {

/// One line of the mission x profile x antennas result grid.
struct SummaryRow {
  std::string mission;
  std::string profile;
  std::string antennas;
  double rate_mbps = 0.0;
  std::string placement;
  double throughput_mbps = 0.0;
  double mean_latency_ms = 0.0;
  double p99_latency_ms = 0.0;
  double loss_frac = 0.0;

  bool operator==(const SummaryRow&) const = default;
};

SummaryRow make_row(std::string mission, std::string profile, std::string antennas,
                    double rate_mbps, std::string placement, const Summary& summary);

/// `mission,profile,antennas,rate_mbps,placement,throughput_mbps,mean_latency_ms,p99_latency_ms,loss_frac`
/// with shortest round-trip numbers.
void write_report_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_report_csv(std::istream& in);

/// Aligned, human-readable table. Throughput to 0.1 Mbps, latency to 0.001 ms.
std::string format_table(const std::vector<SummaryRow>& rows);

}  // namespace uavsim
