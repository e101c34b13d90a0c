// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Each check prints the measured value next to its target.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "aanet/analysis.hpp"
#include "aanet/flight_data.hpp"
#include "aanet/graph.hpp"
#include "aanet/rng.hpp"
#include "aanet/routing.hpp"
#include "aanet/scenario.hpp"
#include "aanet/schemes.hpp"

using namespace aanet;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Routes collected by criteria 6 to 8 for the constraint check of criterion 9.
struct RoutedCase {
  WeightedDigraph graph;
  Route route;
  NodeIndex source;
  NodeIndex target;
};
std::vector<RoutedCase> g_routes;

LinkParams fixed_rate(double bits) {
  LinkParams p;
  p.fixed_rate_bps = 10e6;
  p.file_size_bits = bits;
  return p;
}

Scenario reference_scenario(std::size_t relays, const LinkParams& p, std::uint64_t seed = 1) {
  SyntheticConfig cfg = reference_synthetic_config();
  cfg.n_intermediate = relays;
  cfg.params = p;
  cfg.seed = seed;
  return generate_synthetic(cfg);
}

struct ReferenceSchemes {
  SchemeResult chain;
  SchemeResult satellite;
};

ReferenceSchemes reference_schemes(double bits) {
  const Scenario sc = reference_scenario(0, fixed_rate(bits));
  const Node& bs = sc.node(sc.source_id);
  const Node& t = sc.node(sc.target_id);
  RelayChainOptions six;
  six.forced_hops = 6;
  return {scheme_ideal_relay_chain(bs, t, sc.params, six),
          *scheme_satellite_only(bs, sc.node(sc.satellite_ids.at(0)), t, sc.params)};
}

Outcome geo_delay() {
  const double ms = propagation_delay(35768e3) * 1e3;
  return {std::abs(ms - 119.23) <= 0.1, fmt::format("{:.3f} ms (target 119.23 +/- 0.1)", ms)};
}

Outcome satellite_golden() {
  const Scenario sc = reference_scenario(0, fixed_rate(200e3));
  const WeightedDigraph g = build_digraph(sc.nodes, sc.params);
  const NodeIndex s = g.index_of(sc.source_id), d = g.index_of(sc.target_id);
  const auto route = shortest_path(g, s, d);
  if (!route) return {false, "no route through the satellite"};
  const double ms = route->total_delay_s * 1e3;
  const auto scheme = scheme_satellite_only(sc.node(sc.source_id), sc.node("SAT"), sc.node(sc.target_id), sc.params);
  const bool via_sat = format_hops(*route, g) == "BS,SAT,T";
  const bool agree = scheme && scheme->delay_s == route->total_delay_s;
  return {via_sat && agree && std::abs(ms - 300.0) <= 2.0,
          fmt::format("routed {} total {:.3f} ms (target 300 +/- 2), scheme agrees: {}", format_hops(*route, g), ms,
                      agree)};
}

Outcome chain_golden() {
  const SchemeResult r = reference_schemes(200e3).chain;
  const double ms = r.delay_s * 1e3;
  return {r.hop_count == 6 && std::abs(ms - 231.0) <= 2.0,
          fmt::format("{} edges, {:.3f} ms (target 231 +/- 2)", r.hop_count, ms)};
}

Outcome one_megabit() {
  const ReferenceSchemes r = reference_schemes(1e6);
  const double sat = r.satellite.delay_s * 1e3, chain = r.chain.delay_s * 1e3;
  return {std::abs(sat - 460.0) <= 3.0 && std::abs(chain - 711.0) <= 3.0 && sat < chain,
          fmt::format("satellite {:.3f} ms (460 +/- 3), relay chain {:.3f} ms (711 +/- 3)", sat, chain)};
}

Outcome crossover() {
  const ReferenceSchemes r = reference_schemes(200e3);
  const auto lth = crossover_file_size(r.chain.line, r.satellite.line);
  if (!lth) return {false, "no crossover"};
  const double ratio = *lth / 10e6;
  return {std::abs(ratio / 0.03658 - 1.0) <= 0.05,
          fmt::format("L_th = {:.0f} bits = {:.5f} C (target 0.03658 C +/- 5%)", *lth, ratio)};
}

WeightedDigraph abstract_digraph(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> step(1, 3);
  const double density = 0.15 + 0.6 * u(rng);
  const bool coarse = u(rng) < 0.5;
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    nodes.push_back(make_node(fmt::format("v{}", i), NodeKind::Aircraft, {6381700.0, 0.0, double(i)},
                              default_preset(NodeKind::Aircraft)));
  }
  std::vector<Edge> edges;
  for (NodeIndex i = 0; i < n; ++i) {
    for (NodeIndex j = 0; j < n; ++j) {
      if (i == j || u(rng) >= density) continue;
      Edge e;
      e.from = i;
      e.to = j;
      e.distance_m = 1e5 + 6e5 * u(rng);
      e.snr = 1.0 + 100.0 * u(rng);
      e.rate_bps = 1e7;
      e.propagation_delay_s = coarse ? 0.001 * step(rng) : e.distance_m / 3e8;
      e.transmission_delay_s = coarse ? 0.001 * step(rng) : 0.02 * u(rng);
      e.df_delay_s = 0.020;
      edges.push_back(e);
    }
  }
  return WeightedDigraph::from_edges(std::move(nodes), std::move(edges));
}

// Small physical instances: a BS, a target and up to seven relays drawn
// in a narrow box, so that feasible edges really come from the link model.
WeightedDigraph physical_digraph(std::mt19937_64& rng, std::size_t n, NodeIndex& s, NodeIndex& d) {
  SyntheticConfig cfg = reference_synthetic_config();
  cfg.n_intermediate = n - 3;
  cfg.seed = rng();
  cfg.target = {0.12, 0.3};
  cfg.aircraft_box = {0.0, 0.12, 0.0, 0.6};
  const Scenario sc = generate_synthetic(cfg);
  WeightedDigraph g = build_digraph(sc.nodes, sc.params);
  s = g.index_of(sc.source_id);
  d = g.index_of(sc.target_id);
  return g;
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(6);
  int routed = 0, mismatches = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 3 + trial % 8;
    NodeIndex s = 0, d = n - 1;
    const WeightedDigraph g = trial % 2 ? abstract_digraph(rng, n) : physical_digraph(rng, n, s, d);
    const auto fast = shortest_path(g, s, d, SearchOptions{true});
    const auto slow = brute_force_shortest(g, s, d);
    const auto unpruned = shortest_path(g, s, d, SearchOptions{false});
    if (fast.has_value() != slow.has_value() || fast.has_value() != unpruned.has_value()) {
      ++mismatches;
      continue;
    }
    if (!fast) continue;
    ++routed;
    if (fast->total_delay_s != slow->total_delay_s || !(*fast == *unpruned)) ++mismatches;
    g_routes.push_back({g, *fast, s, d});
  }
  return {mismatches == 0, fmt::format("500 graphs ({} routed), {} mismatches", routed, mismatches)};
}

double mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

Outcome convergence() {
  const SyntheticConfig base = reference_synthetic_config();
  std::vector<double> proposed, chain, chain_min;
  std::size_t missing = 0;
  for (std::uint64_t r = 0; r < 100; ++r) {
    SyntheticConfig cfg = base;
    cfg.n_intermediate = 120;
    cfg.seed = derive_seed(base.seed, 120, r);
    const Scenario sc = generate_synthetic(cfg);
    const WeightedDigraph g = build_digraph(sc.nodes, sc.params);
    const NodeIndex s = g.index_of(sc.source_id), d = g.index_of(sc.target_id);
    const auto route = shortest_path(g, s, d);
    if (!route) {
      ++missing;
      continue;
    }
    proposed.push_back(route->total_delay_s);
    g_routes.push_back({g, *route, s, d});
    RelayChainOptions six;
    six.min_hops = 6;
    chain.push_back(scheme_ideal_relay_chain(sc.node(sc.source_id), sc.node(sc.target_id), sc.params, six).delay_s);
    chain_min.push_back(scheme_ideal_relay_chain(sc.node(sc.source_id), sc.node(sc.target_id), sc.params).delay_s);
  }
  if (proposed.empty()) return {false, "no realization routed"};
  const double gap = mean(proposed) / mean(chain) - 1.0;

  // N_i = 0: the satellite relay is the only path.
  std::size_t unequal = 0;
  for (std::uint64_t r = 0; r < 100; ++r) {
    SyntheticConfig cfg = base;
    cfg.n_intermediate = 0;
    cfg.seed = derive_seed(base.seed, 0, r);
    const auto recs = evaluate_scenario(generate_synthetic(cfg), r, 0, 6);
    if (!recs[0].delay_s || !recs[2].delay_s || *recs[0].delay_s != *recs[2].delay_s) ++unequal;
  }
  fmt::print("      info: geometric-minimum relay chain ({} edges) averages {:.3f} ms; Proposed is {:+.2f}% from it\n",
             5, mean(chain_min) * 1e3, (mean(proposed) / mean(chain_min) - 1.0) * 100.0);
  return {missing == 0 && std::abs(gap) <= 0.05 && unequal == 0,
          fmt::format("N=120: Proposed {:.3f} ms vs 6-edge chain {:.3f} ms ({:+.2f}%, limit 5%), unrouted {}; "
                      "N=0: {} of 100 differ from satellite-only",
                      mean(proposed) * 1e3, mean(chain) * 1e3, gap * 100.0, missing, unequal)};
}

Outcome low_density_flatness() {
  const SyntheticConfig base = reference_synthetic_config();
  std::size_t via_sat = 0, total = 0, slope_errors = 0;
  for (std::size_t n : {0u, 5u, 10u}) {
    for (std::uint64_t r = 0; r < 100; ++r) {
      SyntheticConfig cfg = base;
      cfg.n_intermediate = n;
      cfg.seed = derive_seed(base.seed, n, r);
      Scenario sc = generate_synthetic(cfg);
      ++total;
      std::vector<std::pair<double, double>> samples;  // (L, delay)
      bool satellite_every_time = true;
      double slope = 0.0;
      for (double L : {0.0, 9000.0, 2e5, 1e6, 4e6}) {
        sc.params.file_size_bits = L;
        const WeightedDigraph g = build_digraph(sc.nodes, sc.params);
        const NodeIndex s = g.index_of(sc.source_id), d = g.index_of(sc.target_id), sat = g.index_of("SAT");
        const auto route = shortest_path(g, s, d);
        if (!route) {
          satellite_every_time = false;
          break;
        }
        g_routes.push_back({g, *route, s, d});
        if (route->hops != std::vector<NodeIndex>{s, sat, d}) {
          satellite_every_time = false;
          continue;
        }
        slope = 1.0 / g.find_edge(s, sat)->rate_bps + 1.0 / g.find_edge(sat, d)->rate_bps;
        samples.emplace_back(L, route->total_delay_s);
      }
      if (!satellite_every_time) continue;
      ++via_sat;
      for (const auto& [L, delay] : samples) {
        const double predicted = samples.front().second + slope * L;
        if (std::abs(delay - predicted) > 1e-9 * std::max(1.0, delay)) ++slope_errors;
      }
    }
  }
  const double share = static_cast<double>(via_sat) / static_cast<double>(total);
  return {share >= 0.9 && slope_errors == 0,
          fmt::format("{} of {} realizations (N in 0,5,10) route via the satellite ({:.1f}%, need 90%); "
                      "{} deviations from slope 1/C_up + 1/C_down",
                      via_sat, total, share * 100.0, slope_errors)};
}

Outcome constraint_validation() {
  std::size_t failures = 0;
  for (const RoutedCase& c : g_routes) failures += !validate_route(c.route, c.graph, c.source, c.target).ok();

  // Mutations on a short routed chain of the reference scenario.
  std::size_t mutation_misses = 0;
  const RoutedCase* base = nullptr;
  for (const RoutedCase& c : g_routes) {
    if (c.route.hops.size() >= 4) {
      base = &c;
      break;
    }
  }
  if (!base) return {false, "no multi-hop route to mutate"};
  const auto& g = base->graph;
  auto with_delays = [&](std::vector<NodeIndex> hops) {
    Route r;
    r.hops = std::move(hops);
    for (std::size_t i = 0; i + 1 < r.hops.size(); ++i) {
      const Edge* e = g.find_edge(r.hops[i], r.hops[i + 1]);
      const double w = e ? edge_weight(*e, base->target) : 0.0;
      r.per_hop_delay_s.push_back(w);
      r.total_delay_s += w;
    }
    return r;
  };
  const auto& hops = base->route.hops;

  // Node repeat: go back to the previous relay and forward again.
  std::vector<NodeIndex> repeat(hops.begin(), hops.begin() + 3);
  repeat.push_back(hops[1]);
  repeat.insert(repeat.end(), hops.begin() + 2, hops.end());
  mutation_misses += !validate_route(with_delays(repeat), g, base->source, base->target).has(ViolationKind::RepeatedNode);

  // Edge off the graph: jump to a node with no edge from the source.
  std::vector<NodeIndex> off = hops;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (v != hops[0] && v != base->target && !g.find_edge(hops[0], v)) {
      off[1] = v;
      break;
    }
  }
  mutation_misses += !validate_route(with_delays(off), g, base->source, base->target).has(ViolationKind::MissingEdge);

  // Out-edge from the destination.
  std::vector<NodeIndex> beyond = hops;
  for (const Edge& e : g.neighbors(base->target)) {
    if (std::find(hops.begin(), hops.end(), e.to) == hops.end()) {
      beyond.push_back(e.to);
      break;
    }
  }
  if (beyond.size() == hops.size()) beyond.push_back(hops[hops.size() - 2]);
  mutation_misses += !validate_route(with_delays(beyond), g, base->source, base->target).has(ViolationKind::OutDegree);

  return {failures == 0 && mutation_misses == 0,
          fmt::format("{} routes checked, {} with violations; {} of 3 mutations missed", g_routes.size(), failures,
                      mutation_misses)};
}

Outcome flight_pipeline() {
  const Node bs = [] {
    RadioPreset radio = default_preset(NodeKind::GroundBS);
    const GeodeticCoord lhr = *airport_preset("LHR");
    return make_node("LHR", NodeKind::GroundBS, geodetic_to_ecef({lhr.latitude_deg, lhr.longitude_deg, radio.height_m}),
                     radio);
  }();
  std::vector<double> connectivity;
  std::string detail;
  bool cdd_ok = true;
  for (std::size_t flights : {200u, 60u, 12u}) {
    CorridorConfig cfg;
    cfg.n_flights = flights;
    cfg.seed = 10;
    const Trajectories data = generate_corridor(cfg);
    const TravelResult r = travel_analysis(data, cfg.target_flight, bs, LinkParams{}, 60);
    connectivity.push_back(r.connectivity);
    detail += fmt::format("{} flights -> {:.3f}; ", flights, r.connectivity);
    if (r.hops_cdf) {
      const auto& f = r.hops_cdf->fractions;
      cdd_ok = cdd_ok && std::is_sorted(f.begin(), f.end()) && f.back() == 1.0;
    }

    // Degree distribution of the mid-flight snapshot.
    const auto& track = data.at(cfg.target_flight);
    std::vector<Node> nodes{bs};
    auto aircraft = snapshot(data, track[track.size() / 2].timestamp, 10.0);
    nodes.insert(nodes.end(), aircraft.begin(), aircraft.end());
    const auto cdd = degree_distribution(build_digraph(nodes, LinkParams{}));
    for (std::size_t i = 1; i < cdd.size(); ++i) cdd_ok = cdd_ok && cdd[i].second >= cdd[i - 1].second;
    cdd_ok = cdd_ok && !cdd.empty() && cdd.back().second == 1.0;
  }
  const bool monotone = connectivity[0] >= connectivity[1] && connectivity[1] >= connectivity[2];
  return {connectivity[0] == 1.0 && connectivity[2] < 1.0 && monotone && cdd_ok,
          detail + fmt::format("monotone: {}, CDF/CDD invariants: {}", monotone, cdd_ok)};
}

Outcome construction_consistency() {
  constexpr double kR = 6371e3;
  std::size_t bad_edges = 0, missing = 0, edges = 0;
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    SyntheticConfig cfg = reference_synthetic_config();
    cfg.n_intermediate = 97;
    cfg.seed = rng();
    // Vary density so that both sparse and dense graphs appear.
    cfg.aircraft_box.polar_max_rad = 0.1 + 0.5 * (trial % 5) / 4.0;
    const Scenario sc = generate_synthetic(cfg);
    const WeightedDigraph g = build_digraph(sc.nodes, sc.params);
    const LinkParams& p = sc.params;
    for (NodeIndex i = 0; i < g.node_count(); ++i) {
      for (NodeIndex j = 0; j < g.node_count(); ++j) {
        if (i == j) continue;
        const Node& a = g.node(i);
        const Node& b = g.node(j);
        const double d = std::sqrt(std::pow(a.position.x - b.position.x, 2) + std::pow(a.position.y - b.position.y, 2) +
                                   std::pow(a.position.z - b.position.z, 2));
        const double gain = std::pow(3e8 / (4.0 * M_PI * d * p.carrier_freq_hz), p.path_loss_exp);
        const double gamma = a.tx_power_w * a.tx_gain * b.rx_gain * gain / p.noise_power_w;
        const bool sat = a.kind == NodeKind::Satellite || b.kind == NodeKind::Satellite;
        const double horizon = sat ? std::sqrt(std::pow(kR + a.height_m, 2) - kR * kR) +
                                         std::sqrt(std::pow(kR + b.height_m, 2) - kR * kR)
                                   : 3570.0 * (std::sqrt(a.height_m) + std::sqrt(b.height_m));
        const bool feasible = d > 0.0 && gamma >= p.snr_threshold && d <= horizon;
        const Edge* e = g.find_edge(i, j);
        if (e) {
          ++edges;
          bad_edges += !feasible;
        } else {
          missing += feasible;
        }
      }
    }
  }
  return {bad_edges == 0 && missing == 0,
          fmt::format("50 scenarios x 100 nodes, {} edges; {} infeasible stored, {} feasible missing", edges, bad_edges,
                      missing)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"GEO propagation delay", geo_delay},
      {"satellite two-hop golden number", satellite_golden},
      {"six-edge relay chain golden number", chain_golden},
      {"1 Mbit comparison", one_megabit},
      {"crossover constant", crossover},
      {"router equals brute force", oracle_equivalence},
      {"convergence to the relay-chain bound", convergence},
      {"low-density satellite flatness", low_density_flatness},
      {"route constraint validation", constraint_validation},
      {"flight-data pipeline", flight_pipeline},
      {"graph construction consistency", construction_consistency},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, fmt::format("threw: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    fmt::print("[{}] criterion {:>2}: {} | {} ({:.2f} s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
               o.detail, secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
