#pragma once

// Flight trajectory ingestion and per-timestamp snapshots.
//
// CSV schema (UTF-8, comma separated, one header line):
//   timestamp,flight_id,longitude,latitude,altitude,speed
// timestamp: integer epoch seconds; longitude/latitude: degrees;
// altitude: metres; speed: m/s.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aanet/geo.hpp"
#include "aanet/link.hpp"

namespace aanet {

struct TrajectoryPoint {
  std::int64_t timestamp = 0;
  std::string flight_id;
  double longitude_deg = 0.0;
  double latitude_deg = 0.0;
  double altitude_m = 0.0;
  double speed_mps = 0.0;

  friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

/// Samples per flight, each list sorted by timestamp.
using Trajectories = std::map<std::string, std::vector<TrajectoryPoint>, std::less<>>;

inline constexpr std::string_view kFlightCsvHeader = "timestamp,flight_id,longitude,latitude,altitude,speed";

/// Throws DataError listing every offending line.
Trajectories parse_flight_csv(std::istream& in, std::string_view source_name = "<stream>");
Trajectories load_flight_csv(const std::filesystem::path& path);

/// Rows ordered by flight id, then timestamp.
void write_flight_csv(const Trajectories& flights, std::ostream& out);
void save_flight_csv(const Trajectories& flights, const std::filesystem::path& path);

/// The sample of one flight nearest to t (earlier sample on ties), if within
/// tolerance seconds.
std::optional<TrajectoryPoint> nearest_sample(const std::vector<TrajectoryPoint>& track, std::int64_t t,
                                              double tolerance_s);

/// One aircraft node per flight with a sample within tolerance of t, in
/// flight-id order. Positions are the converted sample positions; the node
/// height is the sample altitude (floored at 0).
std::vector<Node> snapshot(const Trajectories& flights, std::int64_t t, double tolerance_s,
                           const RadioPreset& aircraft_radio = default_preset(NodeKind::Aircraft));

Node node_from_sample(const TrajectoryPoint& p, const RadioPreset& radio);

/// Named airport positions used as ground-station presets.
std::optional<GeodeticCoord> airport_preset(std::string_view code);

/// Synthetic North-Atlantic traffic: great-circle flights between two
/// airports in both directions, cruise altitude throughout, a cross-track
/// offset that vanishes at both ends, and departure times drawn uniformly
/// within +/- one flight duration of the target flight's departure.
struct CorridorConfig {
  std::size_t n_flights = 100;  // in addition to the target flight
  std::uint64_t seed = 1;
  GeodeticCoord origin{51.4700, -0.4543, 0.0};        // LHR
  GeodeticCoord destination{40.6413, -73.7781, 0.0};  // JFK
  std::string target_flight = "BA117";
  std::int64_t target_departure = 1514073600 + 36000;  // 2017-12-24 10:00 UTC
  double cruise_altitude_m = 10700.0;
  double altitude_jitter_m = 300.0;
  double speed_mps = 250.0;
  double max_cross_track_m = 150.0e3;
  std::int64_t sample_interval_s = 10;
};

Trajectories generate_corridor(const CorridorConfig& cfg);

}  // namespace aanet
