#include "aanet/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "aanet/errors.hpp"

namespace aanet {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Proposed:
      return "proposed";
    case Scheme::IdealRelayChain:
      return "ideal_relay_chain";
    case Scheme::SatelliteOnly:
      return "satellite_only";
  }
  return "unknown";
}

Scheme scheme_from_string(std::string_view name) {
  if (name == "proposed") return Scheme::Proposed;
  if (name == "ideal_relay_chain") return Scheme::IdealRelayChain;
  if (name == "satellite_only") return Scheme::SatelliteOnly;
  throw std::invalid_argument(fmt::format("unknown scheme '{}'", name));
}

namespace {

constexpr std::size_t kMaxChainHops = 100000;

// Great circle through src and dst, parametrised by the angle from src.
struct Arc {
  EcefPoint u;  // unit vector towards src
  EcefPoint w;  // unit vector orthogonal to u in the src/dst plane
  double span = 0.0;

  EcefPoint at(double angle, double radius) const {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {radius * (c * u.x + s * w.x), radius * (c * u.y + s * w.y), radius * (c * u.z + s * w.z)};
  }
};

Arc make_arc(const EcefPoint& a, const EcefPoint& b) {
  const double na = a.norm();
  const EcefPoint u{a.x / na, a.y / na, a.z / na};
  const double along = (b.x * u.x + b.y * u.y + b.z * u.z);
  EcefPoint perp{b.x - along * u.x, b.y - along * u.y, b.z - along * u.z};
  const double np = perp.norm();
  if (!(np > 1e-9 * b.norm())) {
    throw DomainError("relay chain undefined: endpoints are radially aligned with the Earth centre");
  }
  Arc arc;
  arc.u = u;
  arc.w = {perp.x / np, perp.y / np, perp.z / np};
  arc.span = std::atan2(np, along);
  return arc;
}

// Largest central angle between points at radii r1 and r2 whose chord stays
// within cap; negative when no such angle exists.
double max_advance(double r1, double r2, double cap) {
  const double c = (r1 * r1 + r2 * r2 - cap * cap) / (2.0 * r1 * r2);
  if (c > 1.0) return -1.0;
  return std::acos(std::max(-1.0, c));
}

struct ChainGeometry {
  Arc arc;
  double src_radius = 0.0;
  double cruise_radius = 0.0;
  double cruise_height = 0.0;
};

ChainGeometry make_geometry(const Node& src, const Node& dst, const RelayChainOptions& options) {
  ChainGeometry geo;
  geo.arc = make_arc(src.position, dst.position);
  geo.src_radius = src.position.norm();
  geo.cruise_height = options.cruise_height_m.value_or(dst.height_m);
  geo.cruise_radius = kEarthRadius + geo.cruise_height;
  return geo;
}

std::size_t greedy_hops(const Node& src, const Node& dst, const ChainGeometry& geo) {
  double angle = 0.0;
  EcefPoint at = src.position;
  double height = src.height_m;
  double radius = geo.src_radius;
  for (std::size_t hops = 1; hops <= kMaxChainHops; ++hops) {
    if (within_horizon(at, height, dst.position, dst.height_m)) return hops;
    const double step = max_advance(radius, geo.cruise_radius, radio_horizon(height, geo.cruise_height));
    if (step <= 0.0 || (angle >= geo.arc.span && height == geo.cruise_height)) {
      throw DomainError(fmt::format("ideal relay chain cannot reach '{}' from '{}'", dst.id, src.id));
    }
    angle = std::min(angle + step, geo.arc.span);
    at = geo.arc.at(angle, geo.cruise_radius);
    height = geo.cruise_height;
    radius = geo.cruise_radius;
  }
  throw DomainError("ideal relay chain exceeds the hop limit");
}

}  // namespace

std::size_t ideal_relay_min_hops(const Node& src, const Node& dst, const RelayChainOptions& options) {
  if (within_horizon(src.position, src.height_m, dst.position, dst.height_m)) return 1;
  return greedy_hops(src, dst, make_geometry(src, dst, options));
}

SchemeResult scheme_ideal_relay_chain(const Node& src, const Node& dst, const LinkParams& p,
                                      const RelayChainOptions& options) {
  SchemeResult result;
  result.scheme = Scheme::IdealRelayChain;
  if (chord_distance(src.position, dst.position) == 0.0) {
    result.waypoints = {src.position};
    return result;
  }

  const std::size_t minimum = ideal_relay_min_hops(src, dst, options);
  std::size_t hops = std::max(minimum, options.min_hops);
  if (options.forced_hops) {
    if (*options.forced_hops < minimum) {
      throw DomainError(fmt::format("{} hops cannot cover the distance; at least {} are needed", *options.forced_hops,
                                    minimum));
    }
    hops = *options.forced_hops;
  }

  const RadioPreset radio = options.relay_radio.value_or(
      RadioPreset{options.cruise_height_m.value_or(dst.height_m), dst.tx_power_w, dst.tx_gain, dst.rx_gain});

  std::vector<Node> chain{src};
  if (hops > 1) {
    const ChainGeometry geo = make_geometry(src, dst, options);
    // Back off by a few ulps so the rounded chord of the first hop stays
    // inside the horizon it was solved against.
    const double reach =
        max_advance(geo.src_radius, geo.cruise_radius, radio_horizon(src.height_m, geo.cruise_height)) * (1.0 - 1e-12);
    const double first = std::min(reach, geo.arc.span);
    const double spacing = (geo.arc.span - first) / static_cast<double>(hops - 1);
    for (std::size_t i = 0; i + 1 < hops; ++i) {
      Node relay = make_node(fmt::format("relay-{}", i + 1), NodeKind::Aircraft,
                             geo.arc.at(first + spacing * static_cast<double>(i), geo.cruise_radius), radio);
      relay.height_m = geo.cruise_height;
      chain.push_back(std::move(relay));
    }
  }
  chain.push_back(dst);

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const Node& a = chain[i];
    const Node& b = chain[i + 1];
    if (!is_visible(a, b)) {
      throw DomainError(fmt::format("relay chain hop {} exceeds the radio horizon", i + 1));
    }
    const LinkBudget budget = link_budget(a, b, p);
    const bool last = i + 2 == chain.size();
    total += last ? budget.base_delay_s() : budget.base_delay_s() + p.df_delay_s;
    result.line.intercept_s += budget.propagation_delay_s + (last ? 0.0 : p.df_delay_s);
    result.line.slope_s_per_bit += 1.0 / budget.rate_bps;
  }
  result.delay_s = total;
  result.hop_count = chain.size() - 1;
  for (const Node& n : chain) result.waypoints.push_back(n.position);
  return result;
}

std::optional<SchemeResult> scheme_satellite_only(const Node& src, const Node& sat, const Node& dst,
                                                  const LinkParams& p) {
  auto feasible = [&p](const Node& a, const Node& b) {
    const double d = chord_distance(a.position, b.position);
    return d > 0.0 && is_visible(a, b) && snr(a, b, p) >= p.snr_threshold;
  };
  if (!feasible(src, sat) || !feasible(sat, dst)) return std::nullopt;

  const LinkBudget up = link_budget(src, sat, p);
  const LinkBudget down = link_budget(sat, dst, p);

  SchemeResult result;
  result.scheme = Scheme::SatelliteOnly;
  result.hop_count = 2;
  // Same summation order as the router so N_i = 0 routes agree bit for bit.
  const double up_weight = up.base_delay_s() + p.df_delay_s;
  const double down_weight = down.base_delay_s();
  result.delay_s = 0.0 + up_weight + down_weight;
  result.line.intercept_s = up.propagation_delay_s + down.propagation_delay_s + p.df_delay_s;
  result.line.slope_s_per_bit = 1.0 / up.rate_bps + 1.0 / down.rate_bps;
  result.waypoints = {src.position, sat.position, dst.position};
  return result;
}

std::optional<double> crossover_file_size(const DelayLine& chain, const DelayLine& satellite) {
  auto gap = [&](double bits) { return chain.at(bits) - satellite.at(bits); };

  const double slope_gap = chain.slope_s_per_bit - satellite.slope_s_per_bit;
  const double scale = std::max(std::abs(chain.slope_s_per_bit), std::abs(satellite.slope_s_per_bit));
  if (std::abs(slope_gap) <= 1e-15 * scale || slope_gap == 0.0) return std::nullopt;

  double lo = 0.0;
  const double g0 = gap(lo);
  if (g0 == 0.0) return 0.0;

  double hi = 1.0;
  while (std::signbit(gap(hi)) == std::signbit(g0)) {
    hi *= 2.0;
    if (hi > 1e30) return std::nullopt;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (std::signbit(gap(mid)) == std::signbit(g0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace aanet
