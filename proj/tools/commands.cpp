#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <CLI11.hpp>

#include "aanet/analysis.hpp"
#include "aanet/config.hpp"
#include "aanet/errors.hpp"
#include "aanet/flight_data.hpp"
#include "aanet/graph.hpp"
#include "aanet/routing.hpp"

namespace aanet::cli {

namespace {

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
};

RunConfig load(const CommonArgs& args) {
  RunConfig cfg = load_run_config(args.config_path);
  if (args.seed) {
    cfg.seed = *args.seed;
    cfg.synthetic.seed = *args.seed;
  }
  if (args.out_dir) cfg.output_dir = *args.out_dir;
  return cfg;
}

void print_route(std::ostream& out, const WeightedDigraph& g, NodeIndex source, NodeIndex target,
                 const std::optional<Route>& route) {
  out << fmt::format("route: {} -> {}\n", g.node(source).id, g.node(target).id);
  if (!route) {
    out << "no route\n";
    return;
  }
  out << fmt::format("hops: {}\n", route->hop_count());
  out << fmt::format("{:>3}  {:<22} {:>12} {:>10} {:>10} {:>9} {:>10}\n", "hop", "link", "distance_km", "d_tr_ms",
                     "d_pr_ms", "d_df_ms", "delay_ms");
  for (std::size_t i = 0; i + 1 < route->hops.size(); ++i) {
    const Edge& e = *g.find_edge(route->hops[i], route->hops[i + 1]);
    const double df = e.to == target ? 0.0 : e.df_delay_s;
    const std::string link = fmt::format("{} -> {}", g.node(e.from).id, g.node(e.to).id);
    out << fmt::format("{:>3}  {:<22} {:>12.3f} {:>10.3f} {:>10.3f} {:>9.3f} {:>10.3f}\n", i + 1, link,
                       e.distance_m / 1e3, e.transmission_delay_s * 1e3, e.propagation_delay_s * 1e3, df * 1e3,
                       route->per_hop_delay_s[i] * 1e3);
  }
  out << fmt::format("total_delay_ms: {:.3f}\n", route->total_delay_s * 1e3);
}

int route_command(const CommonArgs& args, const std::optional<std::string>& source,
                  const std::optional<std::string>& target, std::ostream& out) {
  const RunConfig cfg = load(args);
  Scenario sc = cfg.routing_scenario();
  const WeightedDigraph g = build_digraph(sc.nodes, sc.params);
  const NodeIndex s = g.index_of(source.value_or(sc.source_id));
  const NodeIndex d = g.index_of(target.value_or(sc.target_id));
  const auto route = shortest_path(g, s, d);
  print_route(out, g, s, d, route);
  return route ? kSuccess : kNoRoute;
}

int sweep_command(const CommonArgs& args, const std::optional<std::size_t>& realizations,
                  const std::vector<std::size_t>& n_list, const std::vector<double>& sizes,
                  const std::optional<std::size_t>& threads, std::ostream& out) {
  RunConfig cfg = load(args);
  SweepOptions options = cfg.sweep;
  if (realizations) options.realizations = *realizations;
  if (!n_list.empty()) options.n_intermediate = n_list;
  if (!sizes.empty()) options.file_sizes_bits = sizes;
  if (threads) options.threads = *threads;

  const auto records = run_sweep(cfg.synthetic, options);
  const auto path = cfg.output_dir / "sweep.csv";
  emit_csv(records, path);

  struct Acc {
    double delay = 0.0;
    double hops = 0.0;
    std::size_t routed = 0;
    std::size_t total = 0;
  };
  std::map<std::tuple<std::size_t, double, Scheme>, Acc> summary;
  for (const SweepRecord& r : records) {
    Acc& a = summary[{r.n_intermediate, r.file_size_bits, r.scheme}];
    ++a.total;
    if (r.delay_s) {
      ++a.routed;
      a.delay += *r.delay_s;
      a.hops += static_cast<double>(*r.hop_count);
    }
  }
  out << fmt::format("{:>6} {:>12} {:<18} {:>14} {:>10} {:>8}\n", "n", "file_bits", "scheme", "mean_delay_ms",
                     "mean_hops", "routed");
  for (const auto& [key, a] : summary) {
    const auto& [n, L, scheme] = key;
    if (a.routed) {
      out << fmt::format("{:>6} {:>12} {:<18} {:>14.3f} {:>10.3f} {:>8.3f}\n", n, L, to_string(scheme),
                         a.delay / static_cast<double>(a.routed) * 1e3, a.hops / static_cast<double>(a.routed),
                         static_cast<double>(a.routed) / static_cast<double>(a.total));
    } else {
      out << fmt::format("{:>6} {:>12} {:<18} {:>14} {:>10} {:>8.3f}\n", n, L, to_string(scheme), "-", "-", 0.0);
    }
  }
  out << fmt::format("wrote {} records to {}\n", records.size(), path.string());
  return kSuccess;
}

Trajectories load_flights(const RunConfig& cfg, const std::optional<std::string>& csv) {
  if (csv) return load_flight_csv(*csv);
  if (cfg.flight_data.csv) return load_flight_csv(*cfg.flight_data.csv);
  // No recorded data: fall back to the built-in synthetic corridor.
  return generate_corridor(cfg.corridor);
}

std::vector<Node> flight_nodes(const RunConfig& cfg, const Trajectories& flights, std::int64_t t) {
  std::vector<Node> nodes{cfg.flight_ground_station()};
  auto aircraft = snapshot(flights, t, cfg.flight_data.tolerance_s, cfg.aircraft);
  std::move(aircraft.begin(), aircraft.end(), std::back_inserter(nodes));
  if (auto sat = cfg.flight_satellite()) nodes.push_back(*sat);
  return nodes;
}

int snapshot_route_command(const CommonArgs& args, const std::optional<std::string>& csv,
                           const std::optional<std::string>& flight, const std::optional<std::int64_t>& timestamp,
                           std::ostream& out, std::ostream& err) {
  const RunConfig cfg = load(args);
  const Trajectories flights = load_flights(cfg, csv);
  const std::string target = flight.value_or(cfg.flight_data.target_flight);
  auto it = flights.find(target);
  if (it == flights.end()) throw DataError(fmt::format("flight '{}' not in the data", target));
  const auto& track = it->second;
  const std::int64_t t = timestamp.value_or(track.front().timestamp + (track.back().timestamp - track.front().timestamp) / 2);

  std::vector<Node> nodes = flight_nodes(cfg, flights, t);
  const bool present = std::any_of(nodes.begin(), nodes.end(), [&](const Node& n) { return n.id == target; });
  out << fmt::format("snapshot: t={} aircraft={}\n", t,
                     std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return n.kind == NodeKind::Aircraft; }));
  if (!present) {
    err << fmt::format("flight '{}' has no sample within {} s of t={} (data spans {}..{})\n", target,
                       cfg.flight_data.tolerance_s, t, track.front().timestamp, track.back().timestamp);
    out << fmt::format("route: {} -> {}\nno route\n", cfg.flight_data.ground_bs_id, target);
    return kNoRoute;
  }
  const WeightedDigraph g = build_digraph(std::move(nodes), cfg.link);
  const NodeIndex s = g.index_of(cfg.flight_data.ground_bs_id);
  const NodeIndex d = g.index_of(target);
  const auto route = shortest_path(g, s, d);
  print_route(out, g, s, d, route);
  return route ? kSuccess : kNoRoute;
}

WeightedDigraph graph_for(const RunConfig& cfg, const std::optional<std::string>& csv,
                          const std::optional<std::int64_t>& timestamp) {
  if (timestamp) {
    const Trajectories flights = load_flights(cfg, csv);
    return build_digraph(flight_nodes(cfg, flights, *timestamp), cfg.link);
  }
  const Scenario sc = cfg.routing_scenario();
  return build_digraph(sc.nodes, sc.params);
}

int graph_export_command(const CommonArgs& args, const std::optional<std::string>& csv,
                         const std::optional<std::int64_t>& timestamp, const std::optional<std::string>& out_path,
                         std::ostream& out) {
  const RunConfig cfg = load(args);
  const WeightedDigraph g = graph_for(cfg, csv, timestamp);
  if (out_path) {
    std::ofstream file = open_output(*out_path);
    write_edge_list(g, file);
    out << fmt::format("wrote {} edges over {} nodes to {}\n", g.edge_count(), g.node_count(), *out_path);
  } else {
    write_edge_list(g, out);
  }
  return kSuccess;
}

int degree_command(const CommonArgs& args, const std::optional<std::string>& csv,
                   const std::optional<std::int64_t>& timestamp, std::ostream& out) {
  const RunConfig cfg = load(args);
  const WeightedDigraph g = graph_for(cfg, csv, timestamp);
  const auto cdd = degree_distribution(g);
  const auto path = cfg.output_dir / "degree_cdd.csv";
  std::ofstream file = open_output(path);
  write_degree_csv(cdd, file);
  std::size_t max_degree = cdd.empty() ? 0 : cdd.back().first - 1;
  out << fmt::format("nodes: {}\nedges: {}\nmax_out_degree: {}\nwrote {}\n", g.node_count(), g.edge_count(),
                     max_degree, path.string());
  return kSuccess;
}

int travel_command(const CommonArgs& args, const std::optional<std::string>& csv,
                   const std::optional<std::string>& flight, const std::optional<std::int64_t>& step,
                   std::ostream& out) {
  const RunConfig cfg = load(args);
  const Trajectories flights = load_flights(cfg, csv);
  const std::string target = flight.value_or(cfg.flight_data.target_flight);
  if (!flights.contains(target)) throw DataError(fmt::format("flight '{}' not in the data", target));

  TravelOptions options;
  options.tolerance_s = cfg.flight_data.tolerance_s;
  options.aircraft_radio = cfg.aircraft;
  if (auto sat = cfg.flight_satellite()) options.extra_nodes.push_back(*sat);
  const TravelResult result =
      travel_analysis(flights, target, cfg.flight_ground_station(), cfg.link, step.value_or(cfg.flight_data.step_s), options);

  emit_csv(result.epochs, cfg.output_dir / "travel.csv");
  if (result.hops_cdf) {
    std::ofstream hops = open_output(cfg.output_dir / "cdf_hops.csv");
    write_cdf_csv(*result.hops_cdf, "hop_count", hops);
    std::ofstream delay = open_output(cfg.output_dir / "cdf_delay.csv");
    write_cdf_csv(*result.delay_cdf, "total_delay_s", delay);
  }
  out << fmt::format("flight: {}\nepochs: {}\nrouted: {}\nno_route: {}\nconnectivity: {:.4f}\n", target,
                     result.epochs.size(), result.routed, result.censored, result.connectivity);
  return kSuccess;
}

int generate_command(const CommonArgs& args, const std::optional<std::string>& out_path, std::ostream& out) {
  const RunConfig cfg = load(args);
  const Scenario sc = cfg.routing_scenario();
  if (out_path) {
    std::ofstream file = open_output(*out_path);
    write_scenario_json(sc, file);
    out << fmt::format("wrote {} nodes to {}\n", sc.nodes.size(), *out_path);
  } else {
    write_scenario_json(sc, out);
  }
  return kSuccess;
}

int corridor_command(const CommonArgs& args, const std::string& out_path, const std::optional<std::size_t>& n,
                     std::ostream& out) {
  RunConfig cfg = load(args);
  if (n) cfg.corridor.n_flights = *n;
  if (args.seed) cfg.corridor.seed = *args.seed;
  const Trajectories flights = generate_corridor(cfg.corridor);
  std::ofstream file = open_output(out_path);
  write_flight_csv(flights, file);
  std::size_t rows = 0;
  for (const auto& [id, track] : flights) rows += track.size();
  out << fmt::format("wrote {} flights, {} rows to {}\n", flights.size(), rows, out_path);
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum-delay routing for integrated aeronautical ad hoc networks"};
  app.require_subcommand(1);

  CommonArgs common;
  auto add_common = [&common](CLI::App* sub) {
    sub->add_option("config", common.config_path, "Run configuration (JSON)")->required();
    sub->add_option("--seed", common.seed, "Override the configured seed");
    sub->add_option("--out-dir", common.out_dir, "Override the output directory");
  };

  std::optional<std::string> source, target, csv, flight, out_path;
  std::optional<std::int64_t> timestamp, step;
  std::optional<std::size_t> realizations, threads, n_flights;
  std::vector<std::size_t> n_list;
  std::vector<double> sizes;
  std::string corridor_out;

  auto* route = app.add_subcommand("route", "Route source -> target over the configured scenario");
  add_common(route);
  route->add_option("--source", source, "Source node id (default: scenario source)");
  route->add_option("--target", target, "Target node id (default: scenario target)");

  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over relay counts and file sizes");
  add_common(sweep);
  sweep->add_option("--realizations", realizations, "Realizations per relay count");
  sweep->add_option("--n", n_list, "Relay counts, comma separated")->delimiter(',');
  sweep->add_option("--file-sizes", sizes, "File sizes in bits, comma separated")->delimiter(',');
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* snap = app.add_subcommand("snapshot-route", "Route to a flight at one timestamp of trajectory data");
  add_common(snap);
  snap->add_option("--csv", csv, "Flight CSV (default: flight_data.csv)");
  snap->add_option("--flight", flight, "Target flight id");
  snap->add_option("--timestamp", timestamp, "Epoch seconds (default: middle of the flight)");

  auto* gexp = app.add_subcommand("graph-export", "Write the feasible digraph as an edge list");
  add_common(gexp);
  gexp->add_option("--csv", csv, "Flight CSV for a snapshot graph");
  gexp->add_option("--timestamp", timestamp, "Snapshot time; without it the scenario graph is exported");
  gexp->add_option("--out", out_path, "Output file (default: stdout)");

  auto* degree = app.add_subcommand("degree", "Cumulative out-degree distribution to degree_cdd.csv");
  add_common(degree);
  degree->add_option("--csv", csv, "Flight CSV for a snapshot graph");
  degree->add_option("--timestamp", timestamp, "Snapshot time; without it the scenario graph is used");

  auto* travel = app.add_subcommand("travel", "Route to one flight along its whole trajectory");
  add_common(travel);
  travel->add_option("--csv", csv, "Flight CSV (default: flight_data.csv)");
  travel->add_option("--flight", flight, "Target flight id");
  travel->add_option("--step", step, "Epoch step in seconds");

  auto* generate = app.add_subcommand("generate", "Write the configured scenario as JSON");
  add_common(generate);
  generate->add_option("--out", out_path, "Output file (default: stdout)");

  auto* corridor = app.add_subcommand("corridor", "Write a synthetic North-Atlantic flight CSV");
  add_common(corridor);
  corridor->add_option("--out", corridor_out, "Output CSV")->required();
  corridor->add_option("--flights", n_flights, "Number of flights besides the target");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    }
    return kUsage;
  }

  try {
    if (*route) return route_command(common, source, target, out);
    if (*sweep) return sweep_command(common, realizations, n_list, sizes, threads, out);
    if (*snap) return snapshot_route_command(common, csv, flight, timestamp, out, err);
    if (*gexp) return graph_export_command(common, csv, timestamp, out_path, out);
    if (*degree) return degree_command(common, csv, timestamp, out);
    if (*travel) return travel_command(common, csv, flight, step, out);
    if (*generate) return generate_command(common, out_path, out);
    if (*corridor) return corridor_command(common, corridor_out, n_flights, out);
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kConfigError;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const LookupError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const ConstructionError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const DomainError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kUsage;
}

}  // namespace aanet::cli
