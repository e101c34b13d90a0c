#include "aanet/link.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "aanet/errors.hpp"
#include "aanet/units.hpp"

namespace aanet {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::GroundBS:
      return "ground_bs";
    case NodeKind::Aircraft:
      return "aircraft";
    case NodeKind::Satellite:
      return "satellite";
  }
  return "unknown";
}

NodeKind node_kind_from_string(std::string_view name) {
  if (name == "ground_bs") return NodeKind::GroundBS;
  if (name == "aircraft") return NodeKind::Aircraft;
  if (name == "satellite") return NodeKind::Satellite;
  throw std::invalid_argument(fmt::format("unknown node kind '{}'", name));
}

RadioPreset default_preset(NodeKind kind) {
  switch (kind) {
    case NodeKind::GroundBS:
      return {50.0, dbm_to_watts(45.0), db_to_linear(25.0), db_to_linear(25.0)};
    case NodeKind::Aircraft:
      return {10.7e3, dbm_to_watts(30.0), db_to_linear(25.0), db_to_linear(25.0)};
    case NodeKind::Satellite:
      return {35768.0e3, dbm_to_watts(50.0), db_to_linear(45.0), db_to_linear(45.0)};
  }
  return {};
}

Node make_node(std::string id, NodeKind kind, const EcefPoint& position, const RadioPreset& preset) {
  return Node{std::move(id), kind, position, preset.height_m, preset.tx_power_w, preset.tx_gain, preset.rx_gain};
}

void validate(const Node& node) {
  if (!(node.tx_power_w > 0.0)) {
    throw DomainError(fmt::format("node '{}': tx power must be positive", node.id));
  }
  if (!(node.tx_gain > 0.0 && node.rx_gain > 0.0)) {
    throw DomainError(fmt::format("node '{}': antenna gains must be positive", node.id));
  }
  if (!(node.height_m >= 0.0)) {
    throw DomainError(fmt::format("node '{}': height must be non-negative", node.id));
  }
}

bool is_visible(const Node& a, const Node& b) {
  if (a.kind == NodeKind::Satellite || b.kind == NodeKind::Satellite) {
    return chord_distance(a.position, b.position) <= geometric_horizon(a.height_m, b.height_m);
  }
  return within_horizon(a.position, a.height_m, b.position, b.height_m);
}

void validate(const LinkParams& p) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw DomainError(fmt::format("link parameter {} must be positive, got {}", name, v));
  };
  positive(p.carrier_freq_hz, "carrier_freq");
  positive(p.bandwidth_hz, "bandwidth");
  positive(p.noise_power_w, "noise_power");
  positive(p.df_delay_s, "df_delay");
  if (!(p.path_loss_exp >= 1.0)) {
    throw DomainError(fmt::format("path-loss exponent must be >= 1, got {}", p.path_loss_exp));
  }
  if (!(p.snr_threshold >= 0.0)) {
    throw DomainError(fmt::format("SNR threshold must be >= 0, got {}", p.snr_threshold));
  }
  if (!(p.file_size_bits >= 0.0)) {
    throw DomainError(fmt::format("file size must be >= 0, got {}", p.file_size_bits));
  }
  if (p.fixed_rate_bps) positive(*p.fixed_rate_bps, "fixed_rate");
}

double path_loss(double distance_m, const LinkParams& p) {
  if (!(distance_m > 0.0)) {
    throw DomainError(fmt::format("path loss undefined at distance {} m", distance_m));
  }
  return std::pow(kSpeedOfLight / (4.0 * kPi * distance_m * p.carrier_freq_hz), p.path_loss_exp);
}

double snr(const Node& tx, const Node& rx, const LinkParams& p) {
  if (tx.id == rx.id) {
    throw DomainError(fmt::format("SNR of node '{}' to itself", tx.id));
  }
  const double d = chord_distance(tx.position, rx.position);
  if (!(d > 0.0)) {
    throw DomainError(fmt::format("nodes '{}' and '{}' are co-located", tx.id, rx.id));
  }
  return tx.tx_power_w * tx.tx_gain * rx.rx_gain * path_loss(d, p) / p.noise_power_w;
}

double capacity(double snr, const LinkParams& p) {
  if (p.fixed_rate_bps) return *p.fixed_rate_bps;
  return p.bandwidth_hz * std::log2(1.0 + snr);
}

double transmission_delay(double file_size_bits, double rate_bps) {
  if (!(rate_bps > 0.0)) {
    throw InfeasibleLinkError(fmt::format("link rate {} bit/s cannot carry a file", rate_bps));
  }
  return file_size_bits / rate_bps;
}

double propagation_delay(double distance_m) { return distance_m / kSpeedOfLight; }

LinkBudget link_budget(const Node& tx, const Node& rx, const LinkParams& p) {
  LinkBudget b;
  b.distance_m = chord_distance(tx.position, rx.position);
  b.snr = snr(tx, rx, p);
  b.rate_bps = capacity(b.snr, p);
  b.transmission_delay_s = transmission_delay(p.file_size_bits, b.rate_bps);
  b.propagation_delay_s = propagation_delay(b.distance_m);
  return b;
}

double link_delay(const Node& tx, const Node& rx, const LinkParams& p, bool rx_is_target) {
  const LinkBudget b = link_budget(tx, rx, p);
  return rx_is_target ? b.base_delay_s() : b.base_delay_s() + p.df_delay_s;
}

}  // namespace aanet
