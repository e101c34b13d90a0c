#pragma once

// Link budget and per-link delay model: free-space path loss, received SNR,
// Shannon (or fixed) rate, and the transmission / propagation / relaying
// delay split.

#include <optional>
#include <string>
#include <string_view>

#include "aanet/geo.hpp"

namespace aanet {

enum class NodeKind { GroundBS, Aircraft, Satellite };

std::string_view to_string(NodeKind kind);
/// Accepts "ground_bs", "aircraft", "satellite". Throws std::invalid_argument.
NodeKind node_kind_from_string(std::string_view name);

/// Height and radio front-end shared by every node of one kind.
struct RadioPreset {
  double height_m = 0.0;
  double tx_power_w = 1.0;
  double tx_gain = 1.0;
  double rx_gain = 1.0;
  friend bool operator==(const RadioPreset&, const RadioPreset&) = default;
};

/// Presets used throughout the synthetic experiments: BS 50 m / 45 dBm /
/// 25 dB, aircraft 10.7 km / 30 dBm / 25 dB, GEO satellite 35768 km / 50 dBm /
/// 45 dB.
RadioPreset default_preset(NodeKind kind);

struct Node {
  std::string id;
  NodeKind kind = NodeKind::Aircraft;
  EcefPoint position;
  double height_m = 0.0;
  double tx_power_w = 1.0;
  double tx_gain = 1.0;
  double rx_gain = 1.0;

  friend bool operator==(const Node&, const Node&) = default;
};

Node make_node(std::string id, NodeKind kind, const EcefPoint& position, const RadioPreset& preset);

/// Throws DomainError on non-positive power/gains or negative height.
void validate(const Node& node);

/// Line-of-sight test between two nodes using their positions and heights.
/// Symmetric in its arguments. Pairs with a satellite endpoint use the exact
/// tangent-line horizon; all other pairs use radio_horizon.
bool is_visible(const Node& a, const Node& b);

/// Shared radio constants, SI linear units throughout.
struct LinkParams {
  double carrier_freq_hz = 31.0e9;
  double bandwidth_hz = 200.0e6;
  double noise_power_w = 6.309573444801943e-17;  // -132 dBm
  double path_loss_exp = 2.0;
  double snr_threshold = 1.0;                    // 0 dB
  double df_delay_s = 0.020;
  double file_size_bits = 9000.0;
  /// Unset selects the Shannon capacity; set pins every link to this rate.
  std::optional<double> fixed_rate_bps;

  friend bool operator==(const LinkParams&, const LinkParams&) = default;
};

void validate(const LinkParams& p);

/// Everything the delay model needs for one directed link.
struct LinkBudget {
  double distance_m = 0.0;
  double snr = 0.0;
  double rate_bps = 0.0;
  double transmission_delay_s = 0.0;
  double propagation_delay_s = 0.0;

  double base_delay_s() const { return transmission_delay_s + propagation_delay_s; }
};

/// Linear channel gain (c / (4 pi d f_c))^alpha. d must be positive.
double path_loss(double distance_m, const LinkParams& p);

/// Received SNR at rx for a transmission from tx.
double snr(const Node& tx, const Node& rx, const LinkParams& p);

double capacity(double snr, const LinkParams& p);

/// L / rate. A zero rate throws InfeasibleLinkError.
double transmission_delay(double file_size_bits, double rate_bps);

double propagation_delay(double distance_m);

/// Full budget for tx -> rx. Throws InfeasibleLinkError for a zero-rate link.
LinkBudget link_budget(const Node& tx, const Node& rx, const LinkParams& p);

/// Transmission plus propagation delay, plus the relaying delay unless rx is
/// the route's target aircraft.
double link_delay(const Node& tx, const Node& rx, const LinkParams& p, bool rx_is_target);

}  // namespace aanet
