#pragma once

// Shared fixtures for the unit tests: node builders placed by angle and a
// small random-graph generator used by the property tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "aanet/geo.hpp"
#include "aanet/graph.hpp"
#include "aanet/link.hpp"

namespace aanet::testing {

// Independent oracle constants: written out here rather than pulled from
// the library so a typo on either side shows up as a failure.
inline constexpr double kC = 3.0e8;
inline constexpr double kR = 6371.0e3;

inline Node node_at(std::string id, NodeKind kind, double polar, double azimuth, double height) {
  const double r = kR + height;
  const EcefPoint p{r * std::sin(polar) * std::cos(azimuth), r * std::sin(polar) * std::sin(azimuth),
                    r * std::cos(polar)};
  RadioPreset preset = default_preset(kind);
  preset.height_m = height;
  return make_node(std::move(id), kind, p, preset);
}

inline Node aircraft_at(std::string id, double polar, double azimuth) {
  return node_at(std::move(id), NodeKind::Aircraft, polar, azimuth, 10700.0);
}

// Polar angle separating two points at the same radius whose chord is d.
inline double polar_for_chord(double d, double radius) { return 2.0 * std::asin(d / (2.0 * radius)); }

// Random digraph on n nodes with edge probability `density` and delays drawn
// from a small discrete set so that ties occur often.
inline WeightedDigraph random_digraph(std::mt19937_64& rng, std::size_t n, double density, bool coarse = true) {
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    nodes.push_back(make_node("n" + std::to_string(i), NodeKind::Aircraft, {kR + 10700.0, 0.0, double(i)},
                              default_preset(NodeKind::Aircraft)));
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> step(1, 4);
  std::vector<Edge> edges;
  for (NodeIndex i = 0; i < n; ++i) {
    for (NodeIndex j = 0; j < n; ++j) {
      if (i == j || u(rng) >= density) continue;
      Edge e;
      e.from = i;
      e.to = j;
      e.distance_m = 1000.0 * (1.0 + u(rng));
      e.snr = 10.0;
      e.rate_bps = 1e6;
      e.transmission_delay_s = coarse ? 0.005 * step(rng) : 0.02 * u(rng);
      e.propagation_delay_s = coarse ? 0.001 * step(rng) : 0.003 * u(rng);
      e.df_delay_s = 0.020;
      edges.push_back(e);
    }
  }
  return WeightedDigraph::from_edges(std::move(nodes), std::move(edges));
}

}  // namespace aanet::testing
