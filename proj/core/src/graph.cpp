#include "aanet/graph.hpp"

#include <algorithm>
#include <ostream>

#include <fmt/format.h>

#include "aanet/errors.hpp"

namespace aanet {

void WeightedDigraph::index_nodes() {
  index_.clear();
  index_.reserve(nodes_.size());
  for (NodeIndex i = 0; i < nodes_.size(); ++i) {
    if (!index_.emplace(nodes_[i].id, i).second) {
      throw ConstructionError(fmt::format("duplicate node id '{}'", nodes_[i].id));
    }
  }
}

WeightedDigraph WeightedDigraph::from_edges(std::vector<Node> nodes, std::vector<Edge> edges) {
  WeightedDigraph g;
  g.nodes_ = std::move(nodes);
  g.index_nodes();
  g.out_.assign(g.nodes_.size(), {});
  for (const Edge& e : edges) {
    if (e.from >= g.nodes_.size() || e.to >= g.nodes_.size()) {
      throw ConstructionError(fmt::format("edge {} -> {} references a missing node", e.from, e.to));
    }
    if (e.from == e.to) {
      throw ConstructionError(fmt::format("self-loop at node {}", e.from));
    }
    g.out_[e.from].push_back(e);
  }
  for (auto& list : g.out_) {
    std::sort(list.begin(), list.end(), [](const Edge& a, const Edge& b) { return a.to < b.to; });
    auto dup = std::adjacent_find(list.begin(), list.end(), [](const Edge& a, const Edge& b) { return a.to == b.to; });
    if (dup != list.end()) {
      throw ConstructionError(fmt::format("duplicate edge {} -> {}", dup->from, dup->to));
    }
  }
  g.edge_count_ = edges.size();
  return g;
}

const Node& WeightedDigraph::node(NodeIndex v) const {
  if (v >= nodes_.size()) throw LookupError(fmt::format("node index {} out of range", v));
  return nodes_[v];
}

NodeIndex WeightedDigraph::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) throw LookupError(fmt::format("unknown node id '{}'", id));
  return it->second;
}

bool WeightedDigraph::contains(std::string_view id) const { return index_.contains(std::string(id)); }

std::span<const Edge> WeightedDigraph::neighbors(NodeIndex v) const {
  if (v >= out_.size()) throw LookupError(fmt::format("node index {} out of range", v));
  return out_[v];
}

const Edge* WeightedDigraph::find_edge(NodeIndex from, NodeIndex to) const {
  if (from >= out_.size()) return nullptr;
  const auto& list = out_[from];
  auto it = std::lower_bound(list.begin(), list.end(), to, [](const Edge& e, NodeIndex v) { return e.to < v; });
  return (it != list.end() && it->to == to) ? &*it : nullptr;
}

WeightedDigraph build_digraph(std::vector<Node> nodes, const LinkParams& p, BuildStats* stats) {
  if (nodes.size() < 2) {
    throw ConstructionError(fmt::format("a digraph needs at least 2 nodes, got {}", nodes.size()));
  }
  validate(p);
  for (const Node& n : nodes) validate(n);

  WeightedDigraph g;
  g.nodes_ = std::move(nodes);
  g.index_nodes();
  g.out_.assign(g.nodes_.size(), {});

  BuildStats local;
  const std::size_t n = g.nodes_.size();
  for (NodeIndex i = 0; i < n; ++i) {
    const Node& tx = g.nodes_[i];
    for (NodeIndex j = 0; j < n; ++j) {
      if (i == j) continue;
      ++local.pairs_examined;
      const Node& rx = g.nodes_[j];
      const double d = chord_distance(tx.position, rx.position);
      // Path loss is singular for co-located nodes; such pairs get no edge.
      if (!(d > 0.0)) continue;
      ++local.snr_evaluations;
      const double gamma = snr(tx, rx, p);
      if (gamma < p.snr_threshold || !is_visible(tx, rx)) continue;

      Edge e;
      e.from = i;
      e.to = j;
      e.distance_m = d;
      e.snr = gamma;
      e.rate_bps = capacity(gamma, p);
      e.transmission_delay_s = transmission_delay(p.file_size_bits, e.rate_bps);
      e.propagation_delay_s = propagation_delay(d);
      e.df_delay_s = p.df_delay_s;
      g.out_[i].push_back(e);
      ++g.edge_count_;
    }
  }
  if (stats) *stats = local;
  return g;
}

std::vector<Edge> neighbors(const WeightedDigraph& g, std::string_view id) {
  const auto out = g.neighbors(g.index_of(id));
  std::vector<Edge> edges(out.begin(), out.end());
  std::sort(edges.begin(), edges.end(),
            [&g](const Edge& a, const Edge& b) { return g.node(a.to).id < g.node(b.to).id; });
  return edges;
}

std::vector<std::pair<std::size_t, double>> degree_distribution(const WeightedDigraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::pair<std::size_t, double>> out;
  if (n == 0) return out;

  std::size_t max_degree = 0;
  std::vector<std::size_t> histogram;
  for (NodeIndex v = 0; v < n; ++v) {
    const std::size_t k = g.out_degree(v);
    if (k >= histogram.size()) histogram.resize(k + 1, 0);
    ++histogram[k];
    max_degree = std::max(max_degree, k);
  }

  std::size_t below = 0;
  out.reserve(max_degree + 2);
  for (std::size_t k = 0; k <= max_degree + 1; ++k) {
    out.emplace_back(k, static_cast<double>(below) / static_cast<double>(n));
    if (k < histogram.size()) below += histogram[k];
  }
  return out;
}

void write_edge_list(const WeightedDigraph& g, std::ostream& out) {
  out << "from_id,to_id,distance_m,snr_linear,base_delay_s\n";
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    for (const Edge& e : g.neighbors(v)) {
      out << fmt::format("{},{},{},{},{}\n", g.node(e.from).id, g.node(e.to).id, e.distance_m, e.snr,
                         e.base_delay_s());
    }
  }
}

}  // namespace aanet
