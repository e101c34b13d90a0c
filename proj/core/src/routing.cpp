#include "aanet/routing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

#include <fmt/format.h>

#include "aanet/errors.hpp"

namespace aanet {

namespace {

constexpr NodeIndex kNoPredecessor = std::numeric_limits<NodeIndex>::max();
constexpr double kInfinity = std::numeric_limits<double>::infinity();

void check_endpoints(const WeightedDigraph& g, NodeIndex source, NodeIndex destination) {
  if (source >= g.node_count()) throw LookupError(fmt::format("source index {} out of range", source));
  if (destination >= g.node_count()) {
    throw LookupError(fmt::format("destination index {} out of range", destination));
  }
  if (source == destination) {
    throw std::invalid_argument(fmt::format("source and destination are the same node '{}'", g.node(source).id));
  }
}

Route make_route(const WeightedDigraph& g, std::vector<NodeIndex> hops, NodeIndex destination) {
  Route r;
  r.hops = std::move(hops);
  r.per_hop_delay_s.reserve(r.hops.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < r.hops.size(); ++i) {
    const Edge* e = g.find_edge(r.hops[i], r.hops[i + 1]);
    const double w = edge_weight(*e, destination);
    r.per_hop_delay_s.push_back(w);
    total += w;
  }
  r.total_delay_s = total;
  return r;
}

bool close(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

std::optional<Route> shortest_path(const WeightedDigraph& g, NodeIndex source, NodeIndex destination,
                                   const SearchOptions& options, SearchStats* stats) {
  check_endpoints(g, source, destination);

  SearchStats local;
  const std::size_t n = g.node_count();
  std::vector<double> label(n, kInfinity);
  std::vector<NodeIndex> prev(n, kNoPredecessor);
  double bound = kInfinity;

  using Entry = std::pair<double, NodeIndex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;

  label[source] = 0.0;
  frontier.emplace(0.0, source);
  ++local.pushes;

  while (!frontier.empty()) {
    const auto [cost, u] = frontier.top();
    frontier.pop();
    ++local.pops;
    if (cost > label[u]) {
      ++local.stale_pops;
      continue;
    }
    if (u == destination) {
      bound = std::min(bound, cost);
      // The destination relays nothing: its out-degree on any route is 0.
      continue;
    }
    for (const Edge& e : g.neighbors(u)) {
      ++local.relaxations;
      const double candidate = cost + edge_weight(e, destination);
      if (options.prune && candidate > bound) {
        ++local.pruned;
        continue;
      }
      if (candidate < label[e.to]) {
        label[e.to] = candidate;
        prev[e.to] = u;
        frontier.emplace(candidate, e.to);
        ++local.pushes;
        ++local.improvements;
      }
    }
  }
  if (stats) *stats = local;

  if (prev[destination] == kNoPredecessor) return std::nullopt;

  std::vector<NodeIndex> hops;
  for (NodeIndex v = destination; v != kNoPredecessor; v = prev[v]) hops.push_back(v);
  std::reverse(hops.begin(), hops.end());

  Route r = make_route(g, std::move(hops), destination);
  r.total_delay_s = label[destination];
  return r;
}

std::optional<Route> shortest_path(const WeightedDigraph& g, const std::string& source,
                                   const std::string& destination) {
  return shortest_path(g, g.index_of(source), g.index_of(destination));
}

std::optional<Route> brute_force_shortest(const WeightedDigraph& g, NodeIndex source, NodeIndex destination) {
  if (g.node_count() > kBruteForceNodeLimit) {
    throw std::invalid_argument(fmt::format("brute-force enumeration refuses {} nodes (limit {})", g.node_count(),
                                            kBruteForceNodeLimit));
  }
  check_endpoints(g, source, destination);

  std::optional<std::vector<NodeIndex>> best_hops;
  double best_cost = kInfinity;
  std::vector<NodeIndex> path{source};
  std::vector<bool> on_path(g.node_count(), false);
  on_path[source] = true;

  std::function<void(NodeIndex, double)> extend = [&](NodeIndex u, double cost) {
    for (const Edge& e : g.neighbors(u)) {
      if (on_path[e.to]) continue;
      const double next = cost + edge_weight(e, destination);
      path.push_back(e.to);
      if (e.to == destination) {
        if (next < best_cost || (next == best_cost && path < *best_hops)) {
          best_cost = next;
          best_hops = path;
        }
      } else {
        on_path[e.to] = true;
        extend(e.to, next);
        on_path[e.to] = false;
      }
      path.pop_back();
    }
  };
  extend(source, 0.0);

  if (!best_hops) return std::nullopt;
  return make_route(g, std::move(*best_hops), destination);
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::MissingEdge:
      return "missing_edge";
    case ViolationKind::FlowConservation:
      return "flow_conservation";
    case ViolationKind::OutDegree:
      return "out_degree";
    case ViolationKind::RepeatedNode:
      return "repeated_node";
    case ViolationKind::DelayMismatch:
      return "delay_mismatch";
  }
  return "unknown";
}

bool RouteValidation::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; });
}

RouteValidation validate_route(const Route& r, const WeightedDigraph& g, NodeIndex source, NodeIndex destination) {
  RouteValidation out;
  auto flag = [&out](ViolationKind kind, std::string detail) { out.violations.push_back({kind, std::move(detail)}); };

  const std::size_t n = g.node_count();
  if (r.hops.size() < 2) {
    flag(ViolationKind::FlowConservation, "route has no edge");
    return out;
  }
  for (NodeIndex v : r.hops) {
    if (v >= n) {
      flag(ViolationKind::MissingEdge, fmt::format("hop index {} is not a graph node", v));
      return out;
    }
  }
  if (r.hops.front() != source) {
    flag(ViolationKind::FlowConservation, fmt::format("route starts at '{}' instead of the source", g.node(r.hops.front()).id));
  }
  if (r.hops.back() != destination) {
    flag(ViolationKind::FlowConservation, fmt::format("route ends at '{}' instead of the destination", g.node(r.hops.back()).id));
  }

  std::vector<int> in(n, 0);
  std::vector<int> out_deg(n, 0);
  std::vector<int> visits(n, 0);
  bool edges_ok = true;
  for (std::size_t i = 0; i < r.hops.size(); ++i) {
    ++visits[r.hops[i]];
    if (i + 1 == r.hops.size()) break;
    const NodeIndex a = r.hops[i];
    const NodeIndex b = r.hops[i + 1];
    ++out_deg[a];
    ++in[b];
    if (!g.find_edge(a, b)) {
      edges_ok = false;
      flag(ViolationKind::MissingEdge, fmt::format("no feasible edge '{}' -> '{}'", g.node(a).id, g.node(b).id));
    }
  }

  for (NodeIndex v = 0; v < n; ++v) {
    if (visits[v] == 0) continue;
    if (visits[v] > 1) {
      flag(ViolationKind::RepeatedNode, fmt::format("node '{}' visited {} times", g.node(v).id, visits[v]));
    }
    if (v == destination) {
      if (out_deg[v] != 0) {
        flag(ViolationKind::OutDegree, fmt::format("destination '{}' has {} out-edge(s)", g.node(v).id, out_deg[v]));
      }
      if (in[v] != 1) {
        flag(ViolationKind::FlowConservation, fmt::format("destination entered {} times", in[v]));
      }
      continue;
    }
    if (out_deg[v] > 1) {
      flag(ViolationKind::OutDegree, fmt::format("node '{}' has {} out-edges", g.node(v).id, out_deg[v]));
    }
    if (v == source) {
      if (in[v] != 0 || out_deg[v] != 1) {
        flag(ViolationKind::FlowConservation,
             fmt::format("source entered {} and left {} times", in[v], out_deg[v]));
      }
    } else if (in[v] != 1 || out_deg[v] != 1) {
      flag(ViolationKind::FlowConservation,
           fmt::format("relay '{}' entered {} and left {} times", g.node(v).id, in[v], out_deg[v]));
    }
  }

  if (r.per_hop_delay_s.size() != r.hops.size() - 1) {
    flag(ViolationKind::DelayMismatch, fmt::format("{} per-hop delays for {} edges", r.per_hop_delay_s.size(),
                                                   r.hops.size() - 1));
  } else if (edges_ok) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < r.hops.size(); ++i) {
      const double expected = edge_weight(*g.find_edge(r.hops[i], r.hops[i + 1]), destination);
      if (!close(expected, r.per_hop_delay_s[i])) {
        flag(ViolationKind::DelayMismatch,
             fmt::format("hop {} delay {} s, graph says {} s", i + 1, r.per_hop_delay_s[i], expected));
      }
      sum += r.per_hop_delay_s[i];
    }
    if (!close(sum, r.total_delay_s)) {
      flag(ViolationKind::DelayMismatch, fmt::format("total {} s but hops sum to {} s", r.total_delay_s, sum));
    }
  }
  return out;
}

std::string format_hops(const Route& r, const WeightedDigraph& g) {
  std::string out;
  for (std::size_t i = 0; i < r.hops.size(); ++i) {
    if (i) out += ',';
    out += g.node(r.hops[i]).id;
  }
  return out;
}

}  // namespace aanet
