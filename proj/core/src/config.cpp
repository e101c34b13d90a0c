#include "aanet/config.hpp"

#include <fstream>
#include <functional>
#include <initializer_list>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "aanet/errors.hpp"
#include "aanet/units.hpp"

namespace aanet {

using nlohmann::json;

namespace {

using Convert = std::function<double(double)>;

struct Unit {
  const char* suffix;
  Convert to_si;
};

double identity(double v) { return v; }
Convert times(double k) {
  return [k](double v) { return v * k; };
}

const std::vector<Unit> kFrequency{{"_hz", identity}, {"_mhz", times(1e6)}, {"_ghz", times(1e9)}};
const std::vector<Unit> kPower{{"_w", identity}, {"_dbm", dbm_to_watts}};
const std::vector<Unit> kRatio{{"_linear", identity}, {"_db", db_to_linear}};
const std::vector<Unit> kDuration{{"_s", identity}, {"_ms", times(1e-3)}};
const std::vector<Unit> kBits{{"_bits", identity}, {"_kbit", times(1e3)}, {"_mbit", times(1e6)}};
const std::vector<Unit> kRate{{"_bps", identity}, {"_kbps", times(1e3)}, {"_mbps", times(1e6)}};
const std::vector<Unit> kLength{{"_m", identity}, {"_km", times(1e3)}};
const std::vector<Unit> kAngle{{"_rad", identity}, {"_deg", deg_to_rad}};

// A JSON object being consumed; every key must be read or it is reported.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail(path_.empty() ? "document" : path_, "expected an object");
  }

  [[noreturn]] static void fail(const std::string& where, const std::string& what) {
    throw ConfigError(fmt::format("config error at {}: {}", where, what));
  }

  std::string key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string& key) const { return node_.contains(key); }

  const json* raw(const std::string& key) {
    seen_.insert(key);
    auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  std::optional<double> number(const std::string& key) {
    const json* v = raw(key);
    if (!v) return std::nullopt;
    if (!v->is_number()) fail(key_path(key), "expected a number");
    return v->get<double>();
  }

  std::optional<std::int64_t> integer(const std::string& key) {
    const json* v = raw(key);
    if (!v) return std::nullopt;
    if (!v->is_number_integer()) fail(key_path(key), "expected an integer");
    return v->get<std::int64_t>();
  }

  std::optional<std::size_t> count(const std::string& key) {
    auto v = integer(key);
    if (v && *v < 0) fail(key_path(key), "must be non-negative");
    return v ? std::optional<std::size_t>(static_cast<std::size_t>(*v)) : std::nullopt;
  }

  std::optional<std::string> string(const std::string& key) {
    const json* v = raw(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) fail(key_path(key), "expected a string");
    return v->get<std::string>();
  }

  /// Quantity `base` given with exactly one of the unit suffixes.
  std::optional<double> quantity(const std::string& base, const std::vector<Unit>& units) {
    std::optional<double> value;
    std::string used;
    for (const Unit& u : units) {
      const std::string key = base + u.suffix;
      if (!has(key)) continue;
      if (value) fail(key_path(key), fmt::format("conflicts with {}", key_path(used)));
      value = u.to_si(*number(key));
      used = key;
    }
    return value;
  }

  std::optional<Section> child(const std::string& key) {
    const json* v = raw(key);
    if (!v || v->is_null()) return std::nullopt;
    return Section(*v, key_path(key));
  }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (seen_.contains(it.key())) continue;
      std::string hint;
      for (const char* base : {"carrier_freq", "bandwidth", "noise_power", "snr_threshold", "df_delay", "file_size",
                               "fixed_rate", "height", "tx_power", "tx_gain", "rx_gain"}) {
        if (it.key() == base) hint = " (radio quantities need a unit suffix, e.g. " + std::string(base) + "_...)";
      }
      fail(key_path(it.key()), "unknown key" + hint);
    }
  }

  const std::string& path() const { return path_; }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename T>
void assign(T& target, const std::optional<T>& value) {
  if (value) target = *value;
}

LinkParams parse_link(Section s, LinkParams p) {
  assign(p.carrier_freq_hz, s.quantity("carrier_freq", kFrequency));
  assign(p.bandwidth_hz, s.quantity("bandwidth", kFrequency));
  assign(p.noise_power_w, s.quantity("noise_power", kPower));
  assign(p.path_loss_exp, s.number("path_loss_exponent"));
  assign(p.snr_threshold, s.quantity("snr_threshold", kRatio));
  assign(p.df_delay_s, s.quantity("df_delay", kDuration));
  assign(p.file_size_bits, s.quantity("file_size", kBits));
  if (auto rate = s.quantity("fixed_rate", kRate)) p.fixed_rate_bps = *rate;
  s.finish();
  try {
    validate(p);
  } catch (const DomainError& e) {
    Section::fail(s.path(), e.what());
  }
  return p;
}

RadioPreset parse_preset(Section s, RadioPreset r) {
  assign(r.height_m, s.quantity("height", kLength));
  assign(r.tx_power_w, s.quantity("tx_power", kPower));
  assign(r.tx_gain, s.quantity("tx_gain", kRatio));
  assign(r.rx_gain, s.quantity("rx_gain", kRatio));
  s.finish();
  if (!(r.height_m >= 0.0 && r.tx_power_w > 0.0 && r.tx_gain > 0.0 && r.rx_gain > 0.0)) {
    Section::fail(s.path(), "height must be >= 0 and power/gains > 0");
  }
  return r;
}

AnglePair parse_direction(Section s) {
  AnglePair a;
  auto polar = s.quantity("polar", kAngle);
  auto azimuth = s.quantity("azimuth", kAngle);
  if (!polar || !azimuth) Section::fail(s.path(), "needs polar_{rad|deg} and azimuth_{rad|deg}");
  a.polar_rad = *polar;
  a.azimuth_rad = *azimuth;
  s.finish();
  return a;
}

GeodeticCoord parse_geodetic(Section s) {
  GeodeticCoord c;
  auto lat = s.number("latitude_deg");
  auto lon = s.number("longitude_deg");
  if (!lat || !lon) Section::fail(s.path(), "needs latitude_deg and longitude_deg");
  c.latitude_deg = *lat;
  c.longitude_deg = *lon;
  assign(c.altitude_m, s.number("altitude_m"));
  s.finish();
  try {
    validate(c);
  } catch (const DomainError& e) {
    Section::fail(s.path(), e.what());
  }
  return c;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

Node parse_node(Section s, const RunConfig& cfg) {
  Node n;
  auto id = s.string("id");
  auto kind_name = s.string("kind");
  if (!id || id->empty()) Section::fail(s.key_path("id"), "missing node id");
  if (!kind_name) Section::fail(s.key_path("kind"), "missing node kind");
  NodeKind kind;
  try {
    kind = node_kind_from_string(*kind_name);
  } catch (const std::invalid_argument& e) {
    Section::fail(s.key_path("kind"), e.what());
  }
  RadioPreset radio = kind == NodeKind::GroundBS ? cfg.ground_bs
                      : kind == NodeKind::Aircraft ? cfg.aircraft
                                                   : cfg.satellite;
  assign(radio.height_m, s.quantity("height", kLength));
  assign(radio.tx_power_w, s.quantity("tx_power", kPower));
  assign(radio.tx_gain, s.quantity("tx_gain", kRatio));
  assign(radio.rx_gain, s.quantity("rx_gain", kRatio));

  int positions = 0;
  EcefPoint position;
  if (const json* ecef = s.raw("ecef_m")) {
    ++positions;
    if (!ecef->is_array() || ecef->size() != 3 || !(*ecef)[0].is_number() || !(*ecef)[1].is_number() ||
        !(*ecef)[2].is_number()) {
      Section::fail(s.key_path("ecef_m"), "expected [x, y, z]");
    }
    position = {(*ecef)[0].get<double>(), (*ecef)[1].get<double>(), (*ecef)[2].get<double>()};
  }
  if (auto geo = s.child("geodetic")) {
    ++positions;
    const bool has_altitude = geo->has("altitude_m");
    GeodeticCoord c = parse_geodetic(*geo);
    // An explicit altitude sets the height; otherwise the kind preset does.
    if (has_altitude && !s.has("height_m") && !s.has("height_km")) radio.height_m = std::max(0.0, c.altitude_m);
    c.altitude_m = radio.height_m;
    position = geodetic_to_ecef(c);
  }
  if (auto sph = s.child("spherical")) {
    ++positions;
    const AnglePair dir = parse_direction(*sph);
    position = spherical_to_ecef({kEarthRadius + radio.height_m, dir.polar_rad, dir.azimuth_rad});
  }
  if (positions != 1) Section::fail(s.path(), "give exactly one of ecef_m, geodetic, spherical");
  s.finish();

  n = make_node(*id, kind, position, radio);
  try {
    validate(n);
  } catch (const DomainError& e) {
    Section::fail(s.path(), e.what());
  }
  return n;
}

Scenario parse_scenario(Section s, const RunConfig& cfg, const std::filesystem::path& base_dir) {
  if (auto file = s.string("file")) {
    s.finish();
    Scenario loaded = load_scenario(resolve(base_dir, *file));
    return loaded;
  }
  Scenario sc;
  sc.params = cfg.link;
  auto source = s.string("source");
  auto target = s.string("target");
  if (!source || !target) Section::fail(s.path(), "needs source and target node ids");
  sc.source_id = *source;
  sc.target_id = *target;
  if (const json* sats = s.raw("satellites")) {
    if (!sats->is_array()) Section::fail(s.key_path("satellites"), "expected an array of ids");
    for (const json& id : *sats) {
      if (!id.is_string()) Section::fail(s.key_path("satellites"), "expected an array of ids");
      sc.satellite_ids.push_back(id.get<std::string>());
    }
  }
  const json* nodes = s.raw("nodes");
  if (!nodes || !nodes->is_array()) Section::fail(s.key_path("nodes"), "expected an array of nodes");
  for (std::size_t i = 0; i < nodes->size(); ++i) {
    sc.nodes.push_back(parse_node(Section((*nodes)[i], fmt::format("{}[{}]", s.key_path("nodes"), i)), cfg));
  }
  s.finish();
  for (const std::string& id : {sc.source_id, sc.target_id}) {
    try {
      sc.node(id);
    } catch (const LookupError& e) {
      Section::fail(s.path(), e.what());
    }
  }
  return sc;
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("config error: invalid JSON: {}", e.what()));
  }

  RunConfig cfg;
  Section root(doc, "");
  if (auto v = root.integer("seed")) cfg.seed = static_cast<std::uint64_t>(*v);
  if (auto v = root.string("output_dir")) cfg.output_dir = *v;

  if (auto s = root.child("link")) cfg.link = parse_link(*s, cfg.link);
  if (auto presets = root.child("presets")) {
    if (auto s = presets->child("ground_bs")) cfg.ground_bs = parse_preset(*s, cfg.ground_bs);
    if (auto s = presets->child("aircraft")) cfg.aircraft = parse_preset(*s, cfg.aircraft);
    if (auto s = presets->child("satellite")) cfg.satellite = parse_preset(*s, cfg.satellite);
    presets->finish();
  }

  SyntheticConfig& syn = cfg.synthetic;
  if (auto s = root.child("synthetic")) {
    assign(syn.n_intermediate, s->count("n_intermediate"));
    if (auto d = s->child("bs")) syn.bs = parse_direction(*d);
    if (auto d = s->child("target")) syn.target = parse_direction(*d);
    if (s->has("satellite")) {
      if (auto d = s->child("satellite")) {
        syn.satellite = parse_direction(*d);
      } else {
        syn.satellite.reset();
      }
    }
    if (auto b = s->child("aircraft_box")) {
      assign(syn.aircraft_box.polar_min_rad, b->quantity("polar_min", kAngle));
      assign(syn.aircraft_box.polar_max_rad, b->quantity("polar_max", kAngle));
      assign(syn.aircraft_box.azimuth_min_rad, b->quantity("azimuth_min", kAngle));
      assign(syn.aircraft_box.azimuth_max_rad, b->quantity("azimuth_max", kAngle));
      b->finish();
    }
    assign(cfg.sweep.scheme1_min_hops, s->count("scheme1_min_hops"));
    s->finish();
  }
  syn.params = cfg.link;
  syn.bs_radio = cfg.ground_bs;
  syn.aircraft_radio = cfg.aircraft;
  syn.satellite_radio = cfg.satellite;
  syn.seed = cfg.seed;
  try {
    validate(syn);
  } catch (const ConfigError& e) {
    Section::fail("synthetic", e.what());
  }

  if (auto s = root.child("sweep")) {
    if (const json* ns = s->raw("n_intermediate")) {
      if (!ns->is_array()) Section::fail(s->key_path("n_intermediate"), "expected an array of counts");
      cfg.sweep.n_intermediate.clear();
      for (const json& n : *ns) {
        if (!n.is_number_unsigned()) Section::fail(s->key_path("n_intermediate"), "expected non-negative integers");
        cfg.sweep.n_intermediate.push_back(n.get<std::size_t>());
      }
    }
    for (const Unit& u : kBits) {
      const std::string key = std::string("file_sizes") + u.suffix;
      const json* sizes = s->raw(key);
      if (!sizes) continue;
      if (!sizes->is_array()) Section::fail(s->key_path(key), "expected an array of numbers");
      cfg.sweep.file_sizes_bits.clear();
      for (const json& v : *sizes) {
        if (!v.is_number() || v.get<double>() < 0.0) Section::fail(s->key_path(key), "expected non-negative numbers");
        cfg.sweep.file_sizes_bits.push_back(u.to_si(v.get<double>()));
      }
    }
    assign(cfg.sweep.realizations, s->count("realizations"));
    assign(cfg.sweep.threads, s->count("threads"));
    s->finish();
  } else {
    cfg.sweep.file_sizes_bits = {cfg.link.file_size_bits};
  }

  if (auto s = root.child("scenario")) cfg.scenario = parse_scenario(*s, cfg, base_dir);

  if (auto s = root.child("flight_data")) {
    FlightDataConfig& fd = cfg.flight_data;
    if (auto csv = s->string("csv")) fd.csv = resolve(base_dir, *csv);
    if (s->has("ground_bs")) {
      const json* bs = s->raw("ground_bs");
      if (bs->is_string()) {
        auto preset = airport_preset(bs->get<std::string>());
        if (!preset) Section::fail(s->key_path("ground_bs"), fmt::format("unknown airport preset '{}'", bs->get<std::string>()));
        fd.ground_bs_id = bs->get<std::string>();
        fd.ground_bs = *preset;
      } else {
        Section b(*bs, s->key_path("ground_bs"));
        if (auto id = b.string("id")) fd.ground_bs_id = *id;
        fd.ground_bs = parse_geodetic(std::move(b));
      }
    }
    if (auto v = s->string("target_flight")) fd.target_flight = *v;
    if (auto v = s->integer("step_s")) {
      if (*v <= 0) Section::fail(s->key_path("step_s"), "must be positive");
      fd.step_s = *v;
    }
    if (auto v = s->number("tolerance_s")) {
      if (!(*v > 0.0)) Section::fail(s->key_path("tolerance_s"), "must be positive");
      fd.tolerance_s = *v;
    }
    if (s->has("satellite")) {
      if (auto sat = s->child("satellite")) fd.satellite = parse_geodetic(*sat);
    }
    s->finish();
  }

  if (auto s = root.child("corridor")) {
    CorridorConfig& c = cfg.corridor;
    assign(c.n_flights, s->count("n_flights"));
    if (auto v = s->integer("seed")) c.seed = static_cast<std::uint64_t>(*v);
    if (auto v = s->string("target_flight")) c.target_flight = *v;
    assign(c.target_departure, s->integer("target_departure"));
    assign(c.cruise_altitude_m, s->quantity("cruise_altitude", kLength));
    assign(c.altitude_jitter_m, s->quantity("altitude_jitter", kLength));
    assign(c.max_cross_track_m, s->quantity("max_cross_track", kLength));
    assign(c.speed_mps, s->number("speed_mps"));
    assign(c.sample_interval_s, s->integer("sample_interval_s"));
    s->finish();
  }

  root.finish();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("config error: cannot open '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str(), path.parent_path());
}

Scenario RunConfig::routing_scenario() const {
  if (scenario) return *scenario;
  return generate_synthetic(synthetic);
}

Node RunConfig::flight_ground_station() const {
  GeodeticCoord c = flight_data.ground_bs;
  c.altitude_m = ground_bs.height_m;
  return make_node(flight_data.ground_bs_id, NodeKind::GroundBS, geodetic_to_ecef(c), ground_bs);
}

std::optional<Node> RunConfig::flight_satellite() const {
  if (!flight_data.satellite) return std::nullopt;
  GeodeticCoord c = *flight_data.satellite;
  c.altitude_m = satellite.height_m;
  return make_node("SAT", NodeKind::Satellite, geodetic_to_ecef(c), satellite);
}

}  // namespace aanet
