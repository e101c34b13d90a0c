#pragma once

// Minimum-total-delay routing from a ground station to a target aircraft.
//
// The edge weight depends on the query: an edge into the destination costs
// its transmission + propagation delay only, every other edge additionally
// pays the decode-and-forward delay of the relay it lands on.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aanet/graph.hpp"

namespace aanet {

struct Route {
  std::vector<NodeIndex> hops;         // source first, destination last
  std::vector<double> per_hop_delay_s;  // one entry per edge
  double total_delay_s = 0.0;

  std::size_t hop_count() const { return per_hop_delay_s.size(); }
  friend bool operator==(const Route&, const Route&) = default;
};

struct SearchOptions {
  /// Discard candidate labels worse than the best destination label found.
  bool prune = true;
};

/// Instrumentation counters for one search.
struct SearchStats {
  std::uint64_t pushes = 0;
  std::uint64_t pops = 0;
  std::uint64_t stale_pops = 0;
  std::uint64_t relaxations = 0;  // edges scanned
  std::uint64_t improvements = 0;
  std::uint64_t pruned = 0;

  std::uint64_t operations() const { return pushes + pops + relaxations; }
};

/// Weight of edge e when routing towards destination.
inline double edge_weight(const Edge& e, NodeIndex destination) {
  return e.to == destination ? e.base_delay_s() : e.relay_weight_s();
}

/// Best-first search with a priority queue ordered by (label, node index) and
/// an upper bound taken from the best destination label seen so far. Returns
/// std::nullopt when the destination is unreachable. Throws
/// std::invalid_argument when source == destination and LookupError on bad
/// indices.
std::optional<Route> shortest_path(const WeightedDigraph& g, NodeIndex source, NodeIndex destination,
                                   const SearchOptions& options = {}, SearchStats* stats = nullptr);

std::optional<Route> shortest_path(const WeightedDigraph& g, const std::string& source,
                                   const std::string& destination);

inline constexpr std::size_t kBruteForceNodeLimit = 12;

/// Exhaustive enumeration of simple paths; ties go to the lexicographically
/// smallest hop sequence. Refuses graphs above kBruteForceNodeLimit nodes.
std::optional<Route> brute_force_shortest(const WeightedDigraph& g, NodeIndex source, NodeIndex destination);

enum class ViolationKind {
  MissingEdge,       // consecutive hops not joined by a feasible edge
  FlowConservation,  // wrong endpoints or a node entered/left more than once
  OutDegree,         // a node with more than one out-edge, or any at the destination
  RepeatedNode,      // not a simple path
  DelayMismatch,     // per-hop or total delays disagree with the graph
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct RouteValidation {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

RouteValidation validate_route(const Route& r, const WeightedDigraph& g, NodeIndex source, NodeIndex destination);

/// Comma-separated node ids along the route.
std::string format_hops(const Route& r, const WeightedDigraph& g);

}  // namespace aanet
