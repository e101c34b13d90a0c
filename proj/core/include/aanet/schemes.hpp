#pragma once

// Baseline schemes for a ground station reaching a target aircraft:
//   * an ideal relay chain of aircraft spaced along the great circle at cruise
//     height (delay lower bound for air-to-air relaying), and
//   * a two-hop path through one satellite.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "aanet/link.hpp"

namespace aanet {

enum class Scheme { Proposed, IdealRelayChain, SatelliteOnly };

std::string_view to_string(Scheme scheme);
/// Inverse of to_string; throws std::invalid_argument.
Scheme scheme_from_string(std::string_view name);

/// Total delay as an affine function of the file size: intercept + slope * L.
struct DelayLine {
  double intercept_s = 0.0;
  double slope_s_per_bit = 0.0;

  double at(double file_size_bits) const { return intercept_s + slope_s_per_bit * file_size_bits; }
};

struct SchemeResult {
  Scheme scheme = Scheme::Proposed;
  double delay_s = 0.0;
  std::size_t hop_count = 0;  // number of edges
  DelayLine line;
  /// Positions visited, source first and destination last.
  std::vector<EcefPoint> waypoints;
};

struct RelayChainOptions {
  /// Relay height; defaults to the destination's height.
  std::optional<double> cruise_height_m;
  /// Relay front-end; defaults to the destination's power and gains.
  std::optional<RadioPreset> relay_radio;
  /// The chain uses at least this many hops.
  std::size_t min_hops = 0;
  /// Use exactly this many hops. Must not be below the geometric minimum.
  std::optional<std::size_t> forced_hops;
};

/// Fewest hops that reach dst from src when every relay sits on the great
/// circle between them at cruise height and each hop is capped by the radio
/// horizon of its endpoints. Greedy maximal advance. Throws DomainError when
/// the destination cannot be reached.
std::size_t ideal_relay_min_hops(const Node& src, const Node& dst, const RelayChainOptions& options = {});

/// Delay of the ideal relay chain. The first relay is placed at the greedy
/// maximal advance and the remaining arc is split evenly among the other
/// hops. Co-located endpoints give a zero-hop, zero-delay result.
SchemeResult scheme_ideal_relay_chain(const Node& src, const Node& dst, const LinkParams& p,
                                      const RelayChainOptions& options = {});

/// src -> sat -> dst with the relaying delay charged at the satellite only.
/// std::nullopt when either link misses the SNR threshold or the horizon.
std::optional<SchemeResult> scheme_satellite_only(const Node& src, const Node& sat, const Node& dst,
                                                  const LinkParams& p);

/// File size at which the two delay lines cross, found by bisection.
/// std::nullopt when the lines are parallel or only cross at negative sizes.
std::optional<double> crossover_file_size(const DelayLine& chain, const DelayLine& satellite);

}  // namespace aanet
