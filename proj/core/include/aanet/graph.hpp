#pragma once

// Feasibility-pruned weighted digraph over a node set. An edge i -> j exists
// iff the received SNR at j meets the threshold and j is within the radio
// horizon of i. Edge weights are stored decomposed so the router can apply
// the destination-dependent relaying charge per query.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aanet/link.hpp"

namespace aanet {

/// Dense index of a node inside a WeightedDigraph (its position in nodes()).
using NodeIndex = std::size_t;

struct Edge {
  NodeIndex from = 0;
  NodeIndex to = 0;
  double distance_m = 0.0;
  double snr = 0.0;
  double rate_bps = 0.0;
  double transmission_delay_s = 0.0;
  double propagation_delay_s = 0.0;
  double df_delay_s = 0.0;

  /// Transmission plus propagation delay.
  double base_delay_s() const { return transmission_delay_s + propagation_delay_s; }
  /// Weight of the edge when its head is an intermediate node of the route.
  double relay_weight_s() const { return base_delay_s() + df_delay_s; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct BuildStats {
  std::uint64_t pairs_examined = 0;
  std::uint64_t snr_evaluations = 0;
};

class WeightedDigraph {
 public:
  WeightedDigraph() = default;

  /// Graph with the given nodes and explicit edges (no physical checks).
  /// Out-edges are sorted by head index. Throws ConstructionError on
  /// duplicate ids, self-loops, duplicate edges or dangling endpoints.
  static WeightedDigraph from_edges(std::vector<Node> nodes, std::vector<Edge> edges);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const Node> nodes() const { return nodes_; }
  const Node& node(NodeIndex v) const;

  /// Throws LookupError for an unknown id.
  NodeIndex index_of(std::string_view id) const;
  bool contains(std::string_view id) const;

  /// Out-edges of v in ascending head-index order. Throws LookupError.
  std::span<const Edge> neighbors(NodeIndex v) const;

  /// Pointer to the edge from -> to, or nullptr.
  const Edge* find_edge(NodeIndex from, NodeIndex to) const;

  std::size_t out_degree(NodeIndex v) const { return neighbors(v).size(); }

  friend bool operator==(const WeightedDigraph&, const WeightedDigraph&) = default;

 private:
  friend WeightedDigraph build_digraph(std::vector<Node>, const LinkParams&, BuildStats*);

  void index_nodes();

  std::vector<Node> nodes_;
  std::vector<std::vector<Edge>> out_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::size_t edge_count_ = 0;
};

/// Examines every ordered pair once and keeps the feasible ones. Nodes with
/// no incident edges are retained. Throws ConstructionError on duplicate ids
/// or fewer than two nodes.
WeightedDigraph build_digraph(std::vector<Node> nodes, const LinkParams& p, BuildStats* stats = nullptr);

/// Out-edges of the node with the given id, ordered by ascending neighbour
/// id (string order, unlike the index order of WeightedDigraph::neighbors).
std::vector<Edge> neighbors(const WeightedDigraph& g, std::string_view id);

/// Cumulative out-degree distribution: (k, fraction of nodes with out-degree
/// < k) for k = 0 .. max_degree + 1.
std::vector<std::pair<std::size_t, double>> degree_distribution(const WeightedDigraph& g);

/// Edge-list text export: header `from_id,to_id,distance_m,snr_linear,base_delay_s`
/// then one line per edge in (from, to) index order.
void write_edge_list(const WeightedDigraph& g, std::ostream& out);

}  // namespace aanet
