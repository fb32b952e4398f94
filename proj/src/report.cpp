#include "uavsim/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "uavsim/csv.hpp"

namespace uavsim {

namespace {

const std::vector<std::string> kHeader = {
    "mission",         "profile",        "antennas",  "rate_mbps", "placement", "throughput_mbps",
    "mean_latency_ms", "p99_latency_ms", "loss_frac"};

std::string fixed(double v, int decimals) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*f", decimals, v);
  return buf.data();
}

}  // namespace

SummaryRow make_row(std::string mission, std::string profile, std::string antennas,
                    double rate_mbps, std::string placement, const Summary& summary) {
  return {std::move(mission),
          std::move(profile),
          std::move(antennas),
          rate_mbps,
          std::move(placement),
          summary.throughput_bps / 1e6,
          summary.mean_latency * 1e3,
          summary.p99_latency * 1e3,
          summary.loss_fraction};
}

void write_report_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  for (std::size_t i = 0; i < kHeader.size(); ++i) out << (i ? "," : "") << kHeader[i];
  out << '\n';
  for (const auto& r : rows) {
    out << r.mission << ',' << r.profile << ',' << r.antennas << ','
        << csv::format_double(r.rate_mbps) << ',' << r.placement << ','
        << csv::format_double(r.throughput_mbps) << ',' << csv::format_double(r.mean_latency_ms)
        << ',' << csv::format_double(r.p99_latency_ms) << ',' << csv::format_double(r.loss_frac)
        << '\n';
  }
}

std::vector<SummaryRow> read_report_csv(std::istream& in) {
  std::vector<SummaryRow> rows;
  for (const auto& row : csv::read(in, kHeader)) {
    const auto& f = row.fields;
    rows.push_back({f[0], f[1], f[2], csv::parse_double(f[3], row.line), f[4],
                    csv::parse_double(f[5], row.line), csv::parse_double(f[6], row.line),
                    csv::parse_double(f[7], row.line), csv::parse_double(f[8], row.line)});
  }
  return rows;
}

std::string format_table(const std::vector<SummaryRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("report needs at least one summary");
  std::vector<std::array<std::string, 9>> cells;
  cells.push_back({"mission", "profile", "antennas", "rate [Mbps]", "BS", "throughput [Mbps]",
                   "mean latency [ms]", "p99 latency [ms]", "loss"});
  for (const auto& r : rows) {
    cells.push_back({r.mission, r.profile, r.antennas, fixed(r.rate_mbps, 0), r.placement,
                     fixed(r.throughput_mbps, 1), fixed(r.mean_latency_ms, 3),
                     fixed(r.p99_latency_ms, 3), fixed(r.loss_frac, 4)});
  }
  std::array<std::size_t, 9> width{};
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t c = 0; c < cells[i].size(); ++c) {
      const auto& text = cells[i][c];
      const std::string pad(width[c] - text.size(), ' ');
      // Text columns left-aligned, numbers right-aligned.
      out << (c ? "  " : "") << (c < 3 || c == 4 ? text + pad : pad + text);
    }
    out << '\n';
    if (i == 0) {
      std::size_t total = 0;
      for (auto w : width) total += w;
      out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    }
  }
  return out.str();
}

}  // namespace uavsim
