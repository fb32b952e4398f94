#include "uavsim/scenario.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "uavsim/csv.hpp"

namespace uavsim {

namespace {

double to_double(const std::string& key, const std::string& value) {
  try {
    return csv::parse_double(csv::trim(value), 0);
  } catch (const csv::CsvError&) {
    throw std::invalid_argument("setting '" + key + "': expected a number, got '" + value + "'");
  }
}

std::int64_t to_int(const std::string& key, const std::string& value) {
  try {
    return csv::parse_int(csv::trim(value), 0);
  } catch (const csv::CsvError&) {
    throw std::invalid_argument("setting '" + key + "': expected an integer, got '" + value + "'");
  }
}

std::uint64_t to_seed(const std::string& key, const std::string& value) {
  const auto v = csv::trim(value);
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
    throw std::invalid_argument("setting '" + key + "': expected an unsigned integer");
  }
  return out;
}

template <typename T, typename Parse>
std::vector<T> to_list(const std::string& key, const std::string& value, Parse parse) {
  std::vector<T> out;
  for (auto item : csv::split(value)) {
    if (item.empty()) continue;
    out.push_back(parse(std::string(item)));
  }
  if (out.empty()) throw std::invalid_argument("setting '" + key + "' must not be empty");
  return out;
}

}  // namespace

std::string to_string(BsPlacement placement) {
  return placement == BsPlacement::on_premise ? "on_premise" : "distant_2km";
}

BsPlacement parse_placement(const std::string& text) {
  if (text == "on_premise" || text == "on-premise") return BsPlacement::on_premise;
  if (text == "distant_2km" || text == "distant-2km") return BsPlacement::distant_2km;
  throw std::invalid_argument("unknown BS placement '" + text +
                              "' (expected on-premise or distant-2km)");
}

Vec3 bs_position_for(const FlightTrace& trace, BsPlacement placement, double bs_height) {
  const Vec3 c = trace.centroid();
  const double dx = placement == BsPlacement::distant_2km ? kDistantBsOffset : 0.0;
  return {c.x + dx, c.y, bs_height};
}

AntennaCombo effective_antennas(Rat rat, const AntennaCombo& requested) {
  return rat == Rat::lte ? AntennaCombo{1, 1} : requested;
}

void apply_setting(Settings& s, const std::string& key, const std::string& raw) {
  const std::string value(csv::trim(raw));
  if (key == "trace") s.trace_path = value;
  else if (key == "mission") s.mission.kind = parse_mission_kind(value);
  else if (key == "area_width_m") s.mission.area_width = to_double(key, value);
  else if (key == "area_height_m") s.mission.area_height = to_double(key, value);
  else if (key == "speed_mps") s.mission.speed = to_double(key, value);
  else if (key == "altitude_m") s.mission.altitude = to_double(key, value);
  else if (key == "duration_s") s.mission.duration = to_double(key, value);
  else if (key == "profile") s.profile = parse_rat(value);
  else if (key == "antennas") s.antennas = AntennaCombo::parse(value);
  else if (key == "rate_mbps") s.rate_mbps = to_double(key, value);
  else if (key == "bs") s.placement = parse_placement(value);
  else if (key == "window_s") s.window_s = to_double(key, value);
  else if (key == "seed") s.seed = to_seed(key, value);
  else if (key == "buffer_bytes") s.buffer_bytes = to_int(key, value);
  else if (key == "payload_bytes") s.payload_bytes = to_int(key, value);
  else if (key == "header_bytes") s.header_bytes = to_int(key, value);
  else if (key == "tx_power_dbm") s.tx_power_dbm = to_double(key, value);
  else if (key == "noise_figure_db") s.noise_figure_db = to_double(key, value);
  else if (key == "shadowing_sigma_db") s.shadowing_sigma_db = to_double(key, value);
  else if (key == "shadowing_decorrelation_m") s.shadowing_decorrelation_m = to_double(key, value);
  else if (key == "decimate_s") s.decimate_s = to_double(key, value);
  else if (key == "missions")
    s.missions = to_list<MissionKind>(key, value, parse_mission_kind);
  else if (key == "profiles")
    s.profiles = to_list<Rat>(key, value, parse_rat);
  else if (key == "antenna_combos")
    s.antenna_combos = to_list<AntennaCombo>(key, value, [](const std::string& v) {
      return AntennaCombo::parse(v);
    });
  else if (key == "rates_mbps")
    s.rates_mbps = to_list<double>(key, value, [&](const std::string& v) { return to_double(key, v); });
  else if (key == "placements")
    s.placements = to_list<BsPlacement>(key, value, parse_placement);
  else if (key == "seeds")
    s.seeds = to_list<std::uint64_t>(key, value, [&](const std::string& v) { return to_seed(key, v); });
  else
    throw std::invalid_argument("unknown setting '" + key + "'");
}

void apply_config_file(Settings& settings, const std::string& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw std::runtime_error("config '" + path + "': " + e.what());
  }
  for (const auto& [key, node] : tree) {
    if (node.empty()) {
      apply_setting(settings, key, node.data());
      continue;
    }
    for (const auto& [sub_key, leaf] : node) apply_setting(settings, sub_key, leaf.data());
  }
}

FlightTrace trace_for(const Settings& settings) {
  FlightTrace trace = settings.trace_path.empty() ? synth_trace(settings.mission, settings.seed)
                                                  : parse_trace_file(settings.trace_path);
  if (settings.decimate_s > 0.0) return decimate(trace, settings.decimate_s);
  return trace;
}

ScenarioConfig make_scenario(std::shared_ptr<const FlightTrace> trace, Rat rat,
                             const AntennaCombo& antennas, double rate_mbps, BsPlacement placement,
                             const Settings& settings) {
  ScenarioConfig cfg;
  cfg.bs_position = bs_position_for(*trace, placement);
  cfg.trace = std::move(trace);
  cfg.profile = default_profile(rat);
  cfg.profile.link.tx_power_dbm = settings.tx_power_dbm;
  cfg.profile.link.noise_figure_db = settings.noise_figure_db;
  const auto combo = effective_antennas(rat, antennas);
  cfg.bs_array = ArrayConfig::from_element_count(combo.bs_elements);
  cfg.uav_array = ArrayConfig::from_element_count(combo.uav_elements);
  cfg.source_rate = rate_mbps * 1e6;
  cfg.payload_bytes = settings.payload_bytes;
  cfg.header_bytes = settings.header_bytes;
  cfg.sim_window = settings.window_s;
  cfg.buffer_limit = settings.buffer_bytes;
  cfg.seed = settings.seed;
  cfg.shadowing_sigma_db = settings.shadowing_sigma_db;
  cfg.shadowing_decorrelation = settings.shadowing_decorrelation_m;
  cfg.validate();
  return cfg;
}

}  // namespace uavsim
