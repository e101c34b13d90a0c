#pragma once

// Synthetic node sets placed in spherical coordinates around a ground
// station at the pole, plus scenario file I/O.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aanet/link.hpp"

namespace aanet {

/// Direction from the Earth centre: polar angle from +z, azimuth from +x.
struct AnglePair {
  double polar_rad = 0.0;
  double azimuth_rad = 0.0;

  friend bool operator==(const AnglePair&, const AnglePair&) = default;
};

/// Closed box the relay aircraft are drawn from, uniformly in each angle.
struct AngleBox {
  double polar_min_rad = 0.0;
  double polar_max_rad = 0.0;
  double azimuth_min_rad = 0.0;
  double azimuth_max_rad = 0.0;

  friend bool operator==(const AngleBox&, const AngleBox&) = default;
};

struct SyntheticConfig {
  std::size_t n_intermediate = 0;
  AnglePair bs;
  AnglePair target;
  std::optional<AnglePair> satellite;
  AngleBox aircraft_box;
  RadioPreset bs_radio = default_preset(NodeKind::GroundBS);
  RadioPreset aircraft_radio = default_preset(NodeKind::Aircraft);
  RadioPreset satellite_radio = default_preset(NodeKind::Satellite);
  LinkParams params;
  std::uint64_t seed = 1;

  friend bool operator==(const SyntheticConfig&, const SyntheticConfig&) = default;
};

/// The North-Atlantic-scale setup: BS at the pole, target at polar pi/6 and
/// azimuth pi/4 (about 3300 km of chord from the BS), GEO satellite above the
/// middle of the box, relays drawn from [0, pi/6] x [0, pi/4].
SyntheticConfig reference_synthetic_config();

/// Throws ConfigError on inverted boxes or out-of-range angles.
void validate(const SyntheticConfig& cfg);

struct Scenario {
  std::vector<Node> nodes;
  LinkParams params;
  std::string source_id;
  std::string target_id;
  std::vector<std::string> satellite_ids;

  const Node& node(const std::string& id) const;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Node order: BS, T, SAT (when configured), A1..An. Relay i draws its polar
/// angle then its azimuth from one Rng seeded with cfg.seed.
Scenario generate_synthetic(const SyntheticConfig& cfg);

/// JSON scenario document (linear SI values, see README for field names).
void write_scenario_json(const Scenario& s, std::ostream& out);
Scenario read_scenario_json(std::istream& in);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace aanet
