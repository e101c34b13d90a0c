#pragma once

// Run configuration documents (JSON). Radio quantities carry a mandatory
// unit suffix (carrier_freq_ghz, noise_power_dbm, df_delay_ms, ...); unknown
// keys are rejected with their full key path. Missing keys fall back to the
// built-in defaults, which are the synthetic-experiment values.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "aanet/analysis.hpp"
#include "aanet/flight_data.hpp"
#include "aanet/scenario.hpp"

namespace aanet {

struct FlightDataConfig {
  std::optional<std::filesystem::path> csv;
  std::string ground_bs_id = "LHR";
  GeodeticCoord ground_bs = *airport_preset("LHR");
  std::string target_flight = "BA117";
  std::int64_t step_s = 60;
  double tolerance_s = 10.0;
  /// Sub-satellite point of an optional GEO relay.
  std::optional<GeodeticCoord> satellite;
};

struct RunConfig {
  LinkParams link;
  RadioPreset ground_bs = default_preset(NodeKind::GroundBS);
  RadioPreset aircraft = default_preset(NodeKind::Aircraft);
  RadioPreset satellite = default_preset(NodeKind::Satellite);
  SyntheticConfig synthetic = reference_synthetic_config();
  /// Explicit node set; when absent the synthetic generator is used.
  std::optional<Scenario> scenario;
  SweepOptions sweep;
  FlightDataConfig flight_data;
  CorridorConfig corridor;
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 1;

  /// Explicit scenario, or the synthetic one drawn with `seed`.
  Scenario routing_scenario() const;
  /// Ground station node for flight-data runs.
  Node flight_ground_station() const;
  /// Satellite node for flight-data runs, if configured.
  std::optional<Node> flight_satellite() const;
};

/// Relative paths inside the document resolve against base_dir.
RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace aanet
