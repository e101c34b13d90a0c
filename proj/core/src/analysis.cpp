#include "aanet/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "aanet/errors.hpp"
#include "aanet/rng.hpp"

namespace aanet {

bool record_less(const SweepRecord& a, const SweepRecord& b) {
  return std::tie(a.n_intermediate, a.file_size_bits, a.realization, a.scheme) <
         std::tie(b.n_intermediate, b.file_size_bits, b.realization, b.scheme);
}

std::vector<SweepRecord> evaluate_scenario(const Scenario& scenario, std::uint64_t realization,
                                           std::size_t n_intermediate, std::size_t scheme1_min_hops) {
  const double L = scenario.params.file_size_bits;
  auto blank = [&](Scheme scheme) {
    SweepRecord r;
    r.realization = realization;
    r.n_intermediate = n_intermediate;
    r.file_size_bits = L;
    r.scheme = scheme;
    return r;
  };

  std::vector<SweepRecord> out;
  out.reserve(3);

  {
    SweepRecord rec = blank(Scheme::Proposed);
    const WeightedDigraph g = build_digraph(scenario.nodes, scenario.params);
    if (auto route = shortest_path(g, g.index_of(scenario.source_id), g.index_of(scenario.target_id))) {
      rec.delay_s = route->total_delay_s;
      rec.hop_count = route->hop_count();
      rec.route = format_hops(*route, g);
    }
    out.push_back(std::move(rec));
  }

  const Node& src = scenario.node(scenario.source_id);
  const Node& dst = scenario.node(scenario.target_id);
  {
    SweepRecord rec = blank(Scheme::IdealRelayChain);
    try {
      RelayChainOptions options;
      options.min_hops = scheme1_min_hops;
      const SchemeResult s1 = scheme_ideal_relay_chain(src, dst, scenario.params, options);
      rec.delay_s = s1.delay_s;
      rec.hop_count = s1.hop_count;
    } catch (const DomainError&) {
    }
    out.push_back(std::move(rec));
  }
  {
    SweepRecord rec = blank(Scheme::SatelliteOnly);
    if (!scenario.satellite_ids.empty()) {
      const Node& sat = scenario.node(scenario.satellite_ids.front());
      if (auto s2 = scheme_satellite_only(src, sat, dst, scenario.params)) {
        rec.delay_s = s2->delay_s;
        rec.hop_count = s2->hop_count;
        rec.route = fmt::format("{},{},{}", src.id, sat.id, dst.id);
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<SweepRecord> run_sweep(const SyntheticConfig& base, const SweepOptions& options) {
  if (options.realizations < 1) throw std::invalid_argument("a sweep needs at least one realization");
  validate(base);
  validate(base.params);

  struct Cell {
    std::size_t n;
    std::uint64_t realization;
  };
  std::vector<Cell> cells;
  for (std::size_t n : options.n_intermediate) {
    for (std::uint64_t r = 0; r < options.realizations; ++r) cells.push_back({n, r});
  }
  std::vector<std::vector<SweepRecord>> results(cells.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
      SyntheticConfig cfg = base;
      cfg.n_intermediate = cells[i].n;
      cfg.seed = derive_seed(base.seed, cells[i].n, cells[i].realization);
      Scenario scenario = generate_synthetic(cfg);
      for (double L : options.file_sizes_bits) {
        scenario.params.file_size_bits = L;
        auto recs = evaluate_scenario(scenario, cells[i].realization, cells[i].n, options.scheme1_min_hops);
        std::move(recs.begin(), recs.end(), std::back_inserter(results[i]));
      }
    }
  };

  std::size_t threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(1, cells.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<SweepRecord> records;
  for (auto& chunk : results) std::move(chunk.begin(), chunk.end(), std::back_inserter(records));
  std::sort(records.begin(), records.end(), record_less);
  return records;
}

CdfSeries cdf(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("CDF of an empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  CdfSeries out;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    out.values.push_back(sorted[i]);
    out.fractions.push_back(static_cast<double>(i + 1) / n);
  }
  return out;
}

TravelResult travel_analysis(const Trajectories& flights, const std::string& flight_id, const Node& bs,
                             const LinkParams& params, std::int64_t step_s, const TravelOptions& options) {
  auto it = flights.find(flight_id);
  if (it == flights.end() || it->second.empty()) {
    throw LookupError(fmt::format("flight '{}' not in the data", flight_id));
  }
  if (step_s <= 0) throw std::invalid_argument("travel analysis step must be positive");

  const auto& track = it->second;
  TravelResult result;
  std::vector<double> hops;
  std::vector<double> delays;
  std::uint64_t epoch = 0;
  for (std::int64_t t = track.front().timestamp; t <= track.back().timestamp; t += step_s, ++epoch) {
    std::vector<Node> nodes{bs};
    auto aircraft = snapshot(flights, t, options.tolerance_s, options.aircraft_radio);
    std::move(aircraft.begin(), aircraft.end(), std::back_inserter(nodes));
    nodes.insert(nodes.end(), options.extra_nodes.begin(), options.extra_nodes.end());

    SweepRecord rec;
    rec.realization = epoch;
    rec.file_size_bits = params.file_size_bits;
    rec.scheme = Scheme::Proposed;
    const bool target_present =
        std::any_of(nodes.begin(), nodes.end(), [&](const Node& n) { return n.id == flight_id; });
    rec.n_intermediate = nodes.size() - 1 - options.extra_nodes.size() - (target_present ? 1 : 0);
    if (target_present) {
      const WeightedDigraph g = build_digraph(std::move(nodes), params);
      if (auto route = shortest_path(g, g.index_of(bs.id), g.index_of(flight_id))) {
        rec.delay_s = route->total_delay_s;
        rec.hop_count = route->hop_count();
        rec.route = format_hops(*route, g);
        hops.push_back(static_cast<double>(route->hop_count()));
        delays.push_back(route->total_delay_s);
      }
    }
    if (rec.delay_s) {
      ++result.routed;
    } else {
      ++result.censored;
    }
    result.epochs.push_back(std::move(rec));
    result.timestamps.push_back(t);
  }
  result.connectivity = result.epochs.empty()
                            ? 0.0
                            : static_cast<double>(result.routed) / static_cast<double>(result.epochs.size());
  if (!hops.empty()) {
    result.hops_cdf = cdf(hops);
    result.delay_cdf = cdf(delays);
  }
  return result;
}

void write_sweep_csv(std::span<const SweepRecord> records, std::ostream& out) {
  out << kSweepCsvHeader << '\n';
  for (const SweepRecord& r : records) {
    out << fmt::format("{},{},{},{},{},{},\"{}\"\n", r.realization, r.n_intermediate, r.file_size_bits,
                       to_string(r.scheme), r.delay_s ? fmt::format("{}", *r.delay_s) : std::string(),
                       r.hop_count ? fmt::format("{}", *r.hop_count) : std::string(), r.route);
  }
}

namespace {

template <typename T>
T parse_field(std::string_view text, std::size_t line_no, const char* column) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DataError(fmt::format("sweep CSV line {}: bad {} '{}'", line_no, column, text));
  }
  return value;
}

}  // namespace

std::vector<SweepRecord> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader) {
    throw DataError("sweep CSV: missing or unexpected header");
  }
  std::vector<SweepRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::size_t quote = line.find('"');
    if (quote == std::string::npos || line.back() != '"' || quote + 1 > line.size() - 1) {
      throw DataError(fmt::format("sweep CSV line {}: route must be quoted", line_no));
    }
    std::string_view head(line.data(), quote);
    std::vector<std::string_view> f;
    std::size_t start = 0;
    for (std::size_t pos; (pos = head.find(',', start)) != std::string_view::npos; start = pos + 1) {
      f.push_back(head.substr(start, pos - start));
    }
    if (f.size() != 6 || start != head.size()) {
      throw DataError(fmt::format("sweep CSV line {}: expected 7 columns", line_no));
    }
    SweepRecord r;
    r.realization = parse_field<std::uint64_t>(f[0], line_no, "realization");
    r.n_intermediate = parse_field<std::size_t>(f[1], line_no, "n_intermediate");
    r.file_size_bits = parse_field<double>(f[2], line_no, "file_size_bits");
    try {
      r.scheme = scheme_from_string(f[3]);
    } catch (const std::invalid_argument& e) {
      throw DataError(fmt::format("sweep CSV line {}: {}", line_no, e.what()));
    }
    if (!f[4].empty()) r.delay_s = parse_field<double>(f[4], line_no, "total_delay_s");
    if (!f[5].empty()) r.hop_count = parse_field<std::size_t>(f[5], line_no, "hop_count");
    if (r.delay_s.has_value() != r.hop_count.has_value()) {
      throw DataError(fmt::format("sweep CSV line {}: delay and hop count must be both present or both absent",
                                  line_no));
    }
    r.route = line.substr(quote + 1, line.size() - quote - 2);
    records.push_back(std::move(r));
  }
  return records;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
  return out;
}

void emit_csv(std::span<const SweepRecord> records, const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  write_sweep_csv(records, out);
  out.flush();
  if (!out) throw std::runtime_error(fmt::format("write failed for '{}'", path.string()));
}

void write_cdf_csv(const CdfSeries& series, std::string_view value_column, std::ostream& out) {
  out << value_column << ",cumulative_fraction\n";
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    out << fmt::format("{},{}\n", series.values[i], series.fractions[i]);
  }
}

void write_degree_csv(std::span<const std::pair<std::size_t, double>> cdd, std::ostream& out) {
  out << "k,fraction_below_k\n";
  for (const auto& [k, f] : cdd) out << fmt::format("{},{}\n", k, f);
}

}  // namespace aanet
