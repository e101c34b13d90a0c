#include "aanet/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "aanet/errors.hpp"
#include "aanet/rng.hpp"

namespace aanet {

using nlohmann::json;

SyntheticConfig reference_synthetic_config() {
  SyntheticConfig cfg;
  cfg.bs = {0.0, 0.0};
  cfg.target = {kPi / 6.0, kPi / 4.0};
  cfg.satellite = AnglePair{kPi / 12.0, kPi / 8.0};
  cfg.aircraft_box = {0.0, kPi / 6.0, 0.0, kPi / 4.0};
  return cfg;
}

void validate(const SyntheticConfig& cfg) {
  auto check_angle = [](const AnglePair& a, const char* what) {
    if (!(a.polar_rad >= 0.0 && a.polar_rad <= kPi)) {
      throw ConfigError(fmt::format("{}: polar angle {} outside [0, pi]", what, a.polar_rad));
    }
    if (!(a.azimuth_rad >= 0.0 && a.azimuth_rad < 2.0 * kPi)) {
      throw ConfigError(fmt::format("{}: azimuth {} outside [0, 2pi)", what, a.azimuth_rad));
    }
  };
  check_angle(cfg.bs, "bs");
  check_angle(cfg.target, "target");
  if (cfg.satellite) check_angle(*cfg.satellite, "satellite");
  const AngleBox& b = cfg.aircraft_box;
  if (!(b.polar_min_rad <= b.polar_max_rad && b.azimuth_min_rad <= b.azimuth_max_rad)) {
    throw ConfigError("aircraft_box: minimum exceeds maximum");
  }
  check_angle({b.polar_min_rad, b.azimuth_min_rad}, "aircraft_box min");
  check_angle({b.polar_max_rad, std::min(b.azimuth_max_rad, std::nextafter(2.0 * kPi, 0.0))}, "aircraft_box max");
}

const Node& Scenario::node(const std::string& id) const {
  auto it = std::find_if(nodes.begin(), nodes.end(), [&id](const Node& n) { return n.id == id; });
  if (it == nodes.end()) throw LookupError(fmt::format("scenario has no node '{}'", id));
  return *it;
}

namespace {

Node place(std::string id, NodeKind kind, const AnglePair& dir, const RadioPreset& radio) {
  const SphericalCoord c{kEarthRadius + radio.height_m, dir.polar_rad, dir.azimuth_rad};
  return make_node(std::move(id), kind, spherical_to_ecef(c), radio);
}

}  // namespace

Scenario generate_synthetic(const SyntheticConfig& cfg) {
  validate(cfg);
  validate(cfg.params);

  Scenario s;
  s.params = cfg.params;
  s.source_id = "BS";
  s.target_id = "T";
  s.nodes.reserve(cfg.n_intermediate + 3);
  s.nodes.push_back(place("BS", NodeKind::GroundBS, cfg.bs, cfg.bs_radio));
  s.nodes.push_back(place("T", NodeKind::Aircraft, cfg.target, cfg.aircraft_radio));
  if (cfg.satellite) {
    s.nodes.push_back(place("SAT", NodeKind::Satellite, *cfg.satellite, cfg.satellite_radio));
    s.satellite_ids.push_back("SAT");
  }

  Rng rng(cfg.seed);
  const AngleBox& box = cfg.aircraft_box;
  for (std::size_t i = 0; i < cfg.n_intermediate; ++i) {
    AnglePair dir;
    dir.polar_rad = rng.uniform(box.polar_min_rad, box.polar_max_rad);
    dir.azimuth_rad = rng.uniform(box.azimuth_min_rad, box.azimuth_max_rad);
    s.nodes.push_back(place(fmt::format("A{}", i + 1), NodeKind::Aircraft, dir, cfg.aircraft_radio));
  }
  return s;
}

namespace {

json params_to_json(const LinkParams& p) {
  json j;
  j["carrier_freq_hz"] = p.carrier_freq_hz;
  j["bandwidth_hz"] = p.bandwidth_hz;
  j["noise_power_w"] = p.noise_power_w;
  j["path_loss_exponent"] = p.path_loss_exp;
  j["snr_threshold_linear"] = p.snr_threshold;
  j["df_delay_s"] = p.df_delay_s;
  j["file_size_bits"] = p.file_size_bits;
  j["fixed_rate_bps"] = p.fixed_rate_bps ? json(*p.fixed_rate_bps) : json(nullptr);
  return j;
}

LinkParams params_from_json(const json& j) {
  LinkParams p;
  p.carrier_freq_hz = j.at("carrier_freq_hz").get<double>();
  p.bandwidth_hz = j.at("bandwidth_hz").get<double>();
  p.noise_power_w = j.at("noise_power_w").get<double>();
  p.path_loss_exp = j.at("path_loss_exponent").get<double>();
  p.snr_threshold = j.at("snr_threshold_linear").get<double>();
  p.df_delay_s = j.at("df_delay_s").get<double>();
  p.file_size_bits = j.at("file_size_bits").get<double>();
  if (j.contains("fixed_rate_bps") && !j.at("fixed_rate_bps").is_null()) {
    p.fixed_rate_bps = j.at("fixed_rate_bps").get<double>();
  }
  return p;
}

}  // namespace

void write_scenario_json(const Scenario& s, std::ostream& out) {
  json j;
  j["source"] = s.source_id;
  j["target"] = s.target_id;
  j["satellites"] = s.satellite_ids;
  j["params"] = params_to_json(s.params);
  json nodes = json::array();
  for (const Node& n : s.nodes) {
    nodes.push_back({{"id", n.id},
                     {"kind", std::string(to_string(n.kind))},
                     {"ecef_m", {n.position.x, n.position.y, n.position.z}},
                     {"height_m", n.height_m},
                     {"tx_power_w", n.tx_power_w},
                     {"tx_gain_linear", n.tx_gain},
                     {"rx_gain_linear", n.rx_gain}});
  }
  j["nodes"] = std::move(nodes);
  out << j.dump(2) << '\n';
}

Scenario read_scenario_json(std::istream& in) {
  try {
    const json j = json::parse(in);
    Scenario s;
    s.source_id = j.at("source").get<std::string>();
    s.target_id = j.at("target").get<std::string>();
    if (j.contains("satellites")) s.satellite_ids = j.at("satellites").get<std::vector<std::string>>();
    s.params = params_from_json(j.at("params"));
    for (const json& jn : j.at("nodes")) {
      Node n;
      n.id = jn.at("id").get<std::string>();
      n.kind = node_kind_from_string(jn.at("kind").get<std::string>());
      const auto xyz = jn.at("ecef_m").get<std::vector<double>>();
      if (xyz.size() != 3) throw DataError(fmt::format("node '{}': ecef_m needs 3 components", n.id));
      n.position = {xyz[0], xyz[1], xyz[2]};
      n.height_m = jn.at("height_m").get<double>();
      n.tx_power_w = jn.at("tx_power_w").get<double>();
      n.tx_gain = jn.at("tx_gain_linear").get<double>();
      n.rx_gain = jn.at("rx_gain_linear").get<double>();
      validate(n);
      s.nodes.push_back(std::move(n));
    }
    validate(s.params);
    s.node(s.source_id);
    s.node(s.target_id);
    return s;
  } catch (const json::exception& e) {
    throw DataError(fmt::format("scenario JSON: {}", e.what()));
  } catch (const std::invalid_argument& e) {
    throw DataError(fmt::format("scenario JSON: {}", e.what()));
  } catch (const LookupError& e) {
    throw DataError(fmt::format("scenario JSON: {}", e.what()));
  } catch (const DomainError& e) {
    throw DataError(fmt::format("scenario JSON: {}", e.what()));
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open scenario file '{}'", path.string()));
  return read_scenario_json(in);
}

}  // namespace aanet
