#include "aanet/flight_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "aanet/errors.hpp"
#include "aanet/rng.hpp"

namespace aanet {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

constexpr std::size_t kMaxReportedErrors = 20;

}  // namespace

Trajectories parse_flight_csv(std::istream& in, std::string_view source_name) {
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError(fmt::format("{}: missing header line", source_name));
  }
  std::string_view header = strip_cr(line);
  if (header.size() >= 3 && header.substr(0, 3) == "\xEF\xBB\xBF") header.remove_prefix(3);
  if (header != kFlightCsvHeader) {
    throw DataError(fmt::format("{}:1: header must be '{}', got '{}'", source_name, kFlightCsvHeader, header));
  }

  Trajectories flights;
  std::vector<std::string> errors;
  std::size_t error_count = 0;
  auto report = [&](std::size_t line_no, const std::string& what) {
    ++error_count;
    if (errors.size() < kMaxReportedErrors) errors.push_back(fmt::format("line {}: {}", line_no, what));
  };

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = strip_cr(line);
    if (row.empty()) continue;
    const auto fields = split(row, ',');
    if (fields.size() != 6) {
      report(line_no, fmt::format("expected 6 fields, found {}", fields.size()));
      continue;
    }
    TrajectoryPoint p;
    p.flight_id = std::string(fields[1]);
    if (p.flight_id.empty()) {
      report(line_no, "empty flight_id");
      continue;
    }
    if (!parse_number(fields[0], p.timestamp)) {
      report(line_no, fmt::format("timestamp '{}' is not an integer", fields[0]));
      continue;
    }
    if (!parse_number(fields[2], p.longitude_deg) || !parse_number(fields[3], p.latitude_deg) ||
        !parse_number(fields[4], p.altitude_m) || !parse_number(fields[5], p.speed_mps)) {
      report(line_no, "unparseable number");
      continue;
    }
    try {
      validate(GeodeticCoord{p.latitude_deg, p.longitude_deg, p.altitude_m});
    } catch (const DomainError& e) {
      report(line_no, e.what());
      continue;
    }
    if (!(p.speed_mps >= 0.0)) {
      report(line_no, "negative speed");
      continue;
    }
    flights[p.flight_id].push_back(std::move(p));
  }

  if (error_count > 0) {
    std::string msg = fmt::format("{}: {} malformed row(s)", source_name, error_count);
    for (const auto& e : errors) msg += "\n  " + e;
    if (error_count > errors.size()) msg += fmt::format("\n  ... {} more", error_count - errors.size());
    throw DataError(msg);
  }

  for (auto& [id, track] : flights) {
    std::stable_sort(track.begin(), track.end(),
                     [](const TrajectoryPoint& a, const TrajectoryPoint& b) { return a.timestamp < b.timestamp; });
  }
  return flights;
}

Trajectories load_flight_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open flight data '{}'", path.string()));
  return parse_flight_csv(in, path.string());
}

void write_flight_csv(const Trajectories& flights, std::ostream& out) {
  out << kFlightCsvHeader << '\n';
  for (const auto& [id, track] : flights) {
    for (const TrajectoryPoint& p : track) {
      out << fmt::format("{},{},{},{},{},{}\n", p.timestamp, p.flight_id, p.longitude_deg, p.latitude_deg,
                         p.altitude_m, p.speed_mps);
    }
  }
}

void save_flight_csv(const Trajectories& flights, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError(fmt::format("cannot write flight data '{}'", path.string()));
  write_flight_csv(flights, out);
  if (!out) throw DataError(fmt::format("write failed for '{}'", path.string()));
}

std::optional<TrajectoryPoint> nearest_sample(const std::vector<TrajectoryPoint>& track, std::int64_t t,
                                              double tolerance_s) {
  if (track.empty()) return std::nullopt;
  auto it = std::lower_bound(track.begin(), track.end(), t,
                             [](const TrajectoryPoint& p, std::int64_t ts) { return p.timestamp < ts; });
  const TrajectoryPoint* best = nullptr;
  if (it != track.end()) best = &*it;
  if (it != track.begin()) {
    const TrajectoryPoint& before = *std::prev(it);
    if (!best || (t - before.timestamp) <= (best->timestamp - t)) best = &before;
  }
  if (std::abs(static_cast<double>(best->timestamp - t)) > tolerance_s) return std::nullopt;
  return *best;
}

Node node_from_sample(const TrajectoryPoint& p, const RadioPreset& radio) {
  Node n = make_node(p.flight_id, NodeKind::Aircraft,
                     geodetic_to_ecef({p.latitude_deg, p.longitude_deg, p.altitude_m}), radio);
  n.height_m = std::max(0.0, p.altitude_m);
  return n;
}

std::vector<Node> snapshot(const Trajectories& flights, std::int64_t t, double tolerance_s,
                           const RadioPreset& aircraft_radio) {
  if (!(tolerance_s > 0.0)) throw DomainError("snapshot tolerance must be positive");
  std::vector<Node> nodes;
  for (const auto& [id, track] : flights) {
    if (auto p = nearest_sample(track, t, tolerance_s)) nodes.push_back(node_from_sample(*p, aircraft_radio));
  }
  return nodes;
}

std::optional<GeodeticCoord> airport_preset(std::string_view code) {
  if (code == "LHR") return GeodeticCoord{51.4700, -0.4543, 0.0};
  if (code == "JFK") return GeodeticCoord{40.6413, -73.7781, 0.0};
  return std::nullopt;
}

namespace {

struct Vec3 {
  double x, y, z;
};

Vec3 unit_vector(const GeodeticCoord& c) {
  const double lat = deg_to_rad(c.latitude_deg);
  const double lon = deg_to_rad(c.longitude_deg);
  return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
Vec3 scale(const Vec3& a, double s) { return {a.x * s, a.y * s, a.z * s}; }
Vec3 add(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 normalized(const Vec3& a) { return scale(a, 1.0 / std::sqrt(dot(a, a))); }

// Round to 1e-7 degrees / 1 cm so the CSV text is short and round-trips.
double round_to(double v, double step) { return std::round(v / step) * step; }

std::vector<TrajectoryPoint> fly(const std::string& id, const GeodeticCoord& from, const GeodeticCoord& to,
                                 std::int64_t departure, double altitude, double cross_track_m,
                                 const CorridorConfig& cfg) {
  const Vec3 a = unit_vector(from);
  const Vec3 b = unit_vector(to);
  const double omega = std::acos(std::clamp(dot(a, b), -1.0, 1.0));
  const Vec3 normal = normalized(cross(a, b));
  const double radius = kEarthRadius + altitude;
  const double duration = omega * radius / cfg.speed_mps;
  const double max_offset = cross_track_m / kEarthRadius;

  std::vector<TrajectoryPoint> track;
  for (std::int64_t dt = 0;; dt += cfg.sample_interval_s) {
    const double f = std::min(1.0, static_cast<double>(dt) / duration);
    const Vec3 along = add(scale(a, std::sin((1.0 - f) * omega) / std::sin(omega)),
                           scale(b, std::sin(f * omega) / std::sin(omega)));
    const double offset = max_offset * std::sin(kPi * f);
    const Vec3 p = normalized(add(scale(along, std::cos(offset)), scale(normal, std::sin(offset))));
    TrajectoryPoint tp;
    tp.timestamp = departure + dt;
    tp.flight_id = id;
    tp.latitude_deg = round_to(rad_to_deg(std::asin(std::clamp(p.z, -1.0, 1.0))), 1e-7);
    tp.longitude_deg = round_to(rad_to_deg(std::atan2(p.y, p.x)), 1e-7);
    tp.altitude_m = round_to(altitude, 0.01);
    tp.speed_mps = cfg.speed_mps;
    track.push_back(std::move(tp));
    if (f >= 1.0) break;
  }
  return track;
}

}  // namespace

Trajectories generate_corridor(const CorridorConfig& cfg) {
  if (!(cfg.speed_mps > 0.0) || cfg.sample_interval_s <= 0) {
    throw DomainError("corridor speed and sample interval must be positive");
  }
  const double omega = std::acos(std::clamp(dot(unit_vector(cfg.origin), unit_vector(cfg.destination)), -1.0, 1.0));
  const double duration = omega * (kEarthRadius + cfg.cruise_altitude_m) / cfg.speed_mps;

  Trajectories flights;
  flights[cfg.target_flight] =
      fly(cfg.target_flight, cfg.origin, cfg.destination, cfg.target_departure, cfg.cruise_altitude_m, 0.0, cfg);

  Rng rng(cfg.seed);
  for (std::size_t i = 0; i < cfg.n_flights; ++i) {
    const bool eastbound = rng.uniform01() < 0.5;
    // Departures stay on the shared sampling grid, as in recorded feeds.
    const auto slots = static_cast<std::int64_t>(std::floor(rng.uniform(-duration, duration) / cfg.sample_interval_s));
    const auto departure = cfg.target_departure + slots * cfg.sample_interval_s;
    const double altitude = cfg.cruise_altitude_m + rng.uniform(-cfg.altitude_jitter_m, cfg.altitude_jitter_m);
    const double cross_track = rng.uniform(-cfg.max_cross_track_m, cfg.max_cross_track_m);
    const std::string id = fmt::format("CX{:04}", i + 1);
    flights[id] = eastbound ? fly(id, cfg.destination, cfg.origin, departure, altitude, cross_track, cfg)
                            : fly(id, cfg.origin, cfg.destination, departure, altitude, cross_track, cfg);
  }
  return flights;
}

}  // namespace aanet
