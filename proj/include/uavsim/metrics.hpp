#pragma once

// Per-packet records and the PDCP-level statistics derived from them.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uavsim/channel.hpp"

namespace uavsim {

enum class PacketOutcome : std::uint8_t { delivered, dropped_buffer, dropped_harq, in_flight };

std::string to_string(PacketOutcome outcome);
PacketOutcome parse_outcome(const std::string& text);

struct PacketRecord {
  std::uint64_t seq = 0;
  std::uint32_t size_bits = 0;  ///< payload + headers
  PacketOutcome outcome = PacketOutcome::in_flight;
  double t_gen = 0.0;
  std::optional<double> t_deliver;

  std::optional<double> latency() const {
    if (!t_deliver) return std::nullopt;
    return *t_deliver - t_gen;
  }
  bool operator==(const PacketRecord&) const = default;
};

struct MetricsLog {
  double window = 0.0;  ///< simulated seconds
  std::vector<PacketRecord> packets;
  std::vector<ChannelSample> snr_series;
};

struct Summary {
  bool empty = true;
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped_buffer = 0;
  std::uint64_t dropped_harq = 0;
  std::uint64_t in_flight = 0;
  double throughput_bps = 0.0;
  double mean_latency = 0.0;    ///< seconds
  double median_latency = 0.0;  ///< seconds
  double p99_latency = 0.0;     ///< seconds
  double loss_fraction = 0.0;   ///< dropped / resolved packets
  double min_snr_db = 0.0;
  double mean_snr_db = 0.0;

  bool operator==(const Summary&) const = default;
};

/// Linear-interpolation percentile (q in [0, 1]) of an unsorted sample.
double percentile(std::vector<double> values, double q);

/// Delivered PDCP bits (payload + headers) per bucket of `window` seconds,
/// divided by the bucket length. Buckets are keyed by delivery time.
std::vector<double> pdcp_throughput(const MetricsLog& log, double window);

/// Mean one-way latency of packets delivered in each bucket of `interval`
/// seconds; nullopt marks a bucket with no deliveries.
std::vector<std::optional<double>> latency_series(const MetricsLog& log, double interval);

Summary summarize(const MetricsLog& log);

/// `seq,t_gen_s,t_deliver_s,size_bits,outcome`; undelivered packets leave
/// t_deliver_s empty.
void write_packet_csv(std::ostream& out, const MetricsLog& log);
std::vector<PacketRecord> read_packet_csv(std::istream& in);

/// `t_s,distance_m,snr_db,tx_gain_db,rx_gain_db`, one row every `stride`
/// samples.
void write_snr_csv(std::ostream& out, const MetricsLog& log, std::size_t stride = 1);

}  // namespace uavsim
