#pragma once

// Experiment drivers and statistics: Monte Carlo sweeps over the synthetic
// scenario, empirical CDFs, travel analysis along one flight, CSV output.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aanet/flight_data.hpp"
#include "aanet/graph.hpp"
#include "aanet/routing.hpp"
#include "aanet/scenario.hpp"
#include "aanet/schemes.hpp"

namespace aanet {

struct SweepRecord {
  std::uint64_t realization = 0;
  std::size_t n_intermediate = 0;
  double file_size_bits = 0.0;
  Scheme scheme = Scheme::Proposed;
  std::optional<double> delay_s;        // absent: no route
  std::optional<std::size_t> hop_count;  // present iff delay_s is
  std::string route;                     // comma-separated node ids, may be empty

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

/// Total order used before emission: (n, L, realization, scheme).
bool record_less(const SweepRecord& a, const SweepRecord& b);

struct SweepOptions {
  std::vector<std::size_t> n_intermediate{0};
  std::vector<double> file_sizes_bits{9000.0};
  std::size_t realizations = 1000;
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t threads = 0;
  /// Hop floor for the ideal relay chain baseline.
  std::size_t scheme1_min_hops = 0;
};

/// For every (N_i, realization) the scenario is drawn once with seed
/// derive_seed(base.seed, N_i, realization); each file size is then routed
/// over that topology with all three schemes. Output is sorted with
/// record_less and is identical for any thread count.
std::vector<SweepRecord> run_sweep(const SyntheticConfig& base, const SweepOptions& options);

/// Evaluates the three schemes on one scenario.
std::vector<SweepRecord> evaluate_scenario(const Scenario& scenario, std::uint64_t realization,
                                           std::size_t n_intermediate, std::size_t scheme1_min_hops);

struct CdfSeries {
  std::vector<double> values;     // strictly ascending
  std::vector<double> fractions;  // strictly ascending, last is 1.0
};

/// Empirical CDF with ties merged. Throws std::invalid_argument on empty input.
CdfSeries cdf(std::span<const double> samples);

struct TravelOptions {
  double tolerance_s = 10.0;
  RadioPreset aircraft_radio = default_preset(NodeKind::Aircraft);
  /// Extra fixed nodes (e.g. a GEO satellite) added to every snapshot.
  std::vector<Node> extra_nodes;
};

struct TravelResult {
  std::vector<SweepRecord> epochs;         // realization = epoch index
  std::vector<std::int64_t> timestamps;    // parallel to epochs
  std::size_t routed = 0;
  std::size_t censored = 0;                // epochs without a route
  double connectivity = 0.0;               // routed / epochs
  std::optional<CdfSeries> hops_cdf;       // over routed epochs only
  std::optional<CdfSeries> delay_cdf;
};

/// Routes bs -> flight at every step over the flight's first..last sample.
/// Throws LookupError for an unknown flight.
TravelResult travel_analysis(const Trajectories& flights, const std::string& flight_id, const Node& bs,
                             const LinkParams& params, std::int64_t step_s, const TravelOptions& options = {});

inline constexpr std::string_view kSweepCsvHeader =
    "realization,n_intermediate,file_size_bits,scheme,total_delay_s,hop_count,route";

void write_sweep_csv(std::span<const SweepRecord> records, std::ostream& out);
std::vector<SweepRecord> read_sweep_csv(std::istream& in);
/// Throws std::runtime_error naming the path on I/O failure.
void emit_csv(std::span<const SweepRecord> records, const std::filesystem::path& path);

void write_cdf_csv(const CdfSeries& series, std::string_view value_column, std::ostream& out);
void write_degree_csv(std::span<const std::pair<std::size_t, double>> cdd, std::ostream& out);

/// Opens path for writing, creating parent directories.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace aanet
