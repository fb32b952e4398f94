#include "uavsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "uavsim/csv.hpp"

namespace uavsim {

namespace {

std::size_t bucket_count(double span, double width) {
  return static_cast<std::size_t>(std::ceil(span / width - 1e-9));
}

std::size_t bucket_of(double t, double width, std::size_t n) {
  const auto b = static_cast<std::size_t>(std::max(0.0, std::floor(t / width)));
  return std::min(b, n - 1);
}

}  // namespace

std::string to_string(PacketOutcome outcome) {
  switch (outcome) {
    case PacketOutcome::delivered: return "delivered";
    case PacketOutcome::dropped_buffer: return "dropped_buffer";
    case PacketOutcome::dropped_harq: return "dropped_harq";
    case PacketOutcome::in_flight: return "in_flight";
  }
  return "in_flight";
}

PacketOutcome parse_outcome(const std::string& text) {
  for (auto o : {PacketOutcome::delivered, PacketOutcome::dropped_buffer,
                 PacketOutcome::dropped_harq, PacketOutcome::in_flight}) {
    if (text == to_string(o)) return o;
  }
  throw std::invalid_argument("unknown packet outcome '" + text + "'");
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + (values[hi] - values[lo]) * frac;
}

std::vector<double> pdcp_throughput(const MetricsLog& log, double window) {
  if (!(window > 0.0)) throw std::invalid_argument("throughput window must be > 0");
  const std::size_t n = bucket_count(log.window, window);
  std::vector<double> bits(n, 0.0);
  if (n == 0) return bits;
  for (const auto& p : log.packets) {
    if (p.outcome != PacketOutcome::delivered) continue;
    bits[bucket_of(*p.t_deliver, window, n)] += p.size_bits;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double len = std::min(window, log.window - static_cast<double>(i) * window);
    bits[i] /= len;
  }
  return bits;
}

std::vector<std::optional<double>> latency_series(const MetricsLog& log, double interval) {
  if (!(interval > 0.0)) throw std::invalid_argument("latency interval must be > 0");
  const std::size_t n = bucket_count(log.window, interval);
  std::vector<double> sum(n, 0.0);
  std::vector<std::size_t> count(n, 0);
  if (n > 0) {
    for (const auto& p : log.packets) {
      if (p.outcome != PacketOutcome::delivered) continue;
      const auto b = bucket_of(*p.t_deliver, interval, n);
      sum[b] += *p.latency();
      ++count[b];
    }
  }
  std::vector<std::optional<double>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (count[i] > 0) out[i] = sum[i] / static_cast<double>(count[i]);
  }
  return out;
}

Summary summarize(const MetricsLog& log) {
  Summary s;
  s.empty = log.packets.empty() && log.snr_series.empty();
  if (s.empty) return s;

  std::vector<double> latencies;
  double delivered_bits = 0.0;
  for (const auto& p : log.packets) {
    ++s.generated;
    switch (p.outcome) {
      case PacketOutcome::delivered:
        ++s.delivered;
        delivered_bits += p.size_bits;
        latencies.push_back(*p.latency());
        break;
      case PacketOutcome::dropped_buffer: ++s.dropped_buffer; break;
      case PacketOutcome::dropped_harq: ++s.dropped_harq; break;
      case PacketOutcome::in_flight: ++s.in_flight; break;
    }
  }
  if (log.window > 0.0) s.throughput_bps = delivered_bits / log.window;
  if (!latencies.empty()) {
    s.mean_latency = std::accumulate(latencies.begin(), latencies.end(), 0.0) /
                     static_cast<double>(latencies.size());
    s.median_latency = percentile(latencies, 0.5);
    s.p99_latency = percentile(std::move(latencies), 0.99);
  }
  const auto resolved = s.generated - s.in_flight;
  if (resolved > 0) {
    s.loss_fraction =
        static_cast<double>(s.dropped_buffer + s.dropped_harq) / static_cast<double>(resolved);
  }
  if (!log.snr_series.empty()) {
    double min_snr = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const auto& c : log.snr_series) {
      min_snr = std::min(min_snr, c.snr_db);
      sum += c.snr_db;
    }
    s.min_snr_db = min_snr;
    s.mean_snr_db = sum / static_cast<double>(log.snr_series.size());
  }
  return s;
}

void write_packet_csv(std::ostream& out, const MetricsLog& log) {
  out << "seq,t_gen_s,t_deliver_s,size_bits,outcome\n";
  for (const auto& p : log.packets) {
    out << p.seq << ',' << csv::format_double(p.t_gen) << ','
        << (p.t_deliver ? csv::format_double(*p.t_deliver) : std::string{}) << ',' << p.size_bits
        << ',' << to_string(p.outcome) << '\n';
  }
}

std::vector<PacketRecord> read_packet_csv(std::istream& in) {
  const auto rows = csv::read(in, {"seq", "t_gen_s", "t_deliver_s", "size_bits", "outcome"});
  std::vector<PacketRecord> packets;
  packets.reserve(rows.size());
  for (const auto& row : rows) {
    PacketRecord p;
    p.seq = static_cast<std::uint64_t>(csv::parse_int(row.fields[0], row.line));
    p.t_gen = csv::parse_double(row.fields[1], row.line);
    if (!row.fields[2].empty()) p.t_deliver = csv::parse_double(row.fields[2], row.line);
    p.size_bits = static_cast<std::uint32_t>(csv::parse_int(row.fields[3], row.line));
    p.outcome = parse_outcome(row.fields[4]);
    packets.push_back(p);
  }
  return packets;
}

void write_snr_csv(std::ostream& out, const MetricsLog& log, std::size_t stride) {
  if (stride == 0) stride = 1;
  out << "t_s,distance_m,snr_db,tx_gain_db,rx_gain_db\n";
  for (std::size_t i = 0; i < log.snr_series.size(); i += stride) {
    const auto& c = log.snr_series[i];
    out << csv::format_double(c.t) << ',' << csv::format_double(c.distance_3d) << ','
        << csv::format_double(c.snr_db) << ',' << csv::format_double(c.tx_gain_db) << ','
        << csv::format_double(c.rx_gain_db) << '\n';
  }
}

}  // namespace uavsim
