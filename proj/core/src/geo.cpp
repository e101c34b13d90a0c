#include "aanet/geo.hpp"

#include <fmt/format.h>

#include "aanet/errors.hpp"

namespace aanet {

namespace {
constexpr double kHorizonKmPerSqrtMetre = 3.57;
constexpr double kMinAltitude = -500.0;
}  // namespace

void validate(const SphericalCoord& c) {
  if (!(c.r >= kEarthRadius)) {
    throw DomainError(fmt::format("spherical radius {} m is below the Earth radius", c.r));
  }
  if (!(c.theta >= 0.0 && c.theta <= kPi)) {
    throw DomainError(fmt::format("polar angle {} rad outside [0, pi]", c.theta));
  }
  if (!(c.phi >= 0.0 && c.phi < 2.0 * kPi)) {
    throw DomainError(fmt::format("azimuth {} rad outside [0, 2pi)", c.phi));
  }
}

void validate(const GeodeticCoord& c) {
  if (!(c.latitude_deg >= -90.0 && c.latitude_deg <= 90.0)) {
    throw DomainError(fmt::format("latitude {} outside [-90, 90]", c.latitude_deg));
  }
  if (!(c.longitude_deg >= -180.0 && c.longitude_deg <= 180.0)) {
    throw DomainError(fmt::format("longitude {} outside [-180, 180]", c.longitude_deg));
  }
  if (!(c.altitude_m >= kMinAltitude)) {
    throw DomainError(fmt::format("altitude {} m below {} m", c.altitude_m, kMinAltitude));
  }
}

EcefPoint spherical_to_ecef(const SphericalCoord& c) {
  const double s = std::sin(c.theta);
  return {c.r * s * std::cos(c.phi), c.r * s * std::sin(c.phi), c.r * std::cos(c.theta)};
}

EcefPoint geodetic_to_ecef(const GeodeticCoord& c) {
  const double r = kEarthRadius + c.altitude_m;
  const double lat = deg_to_rad(c.latitude_deg);
  const double lon = deg_to_rad(c.longitude_deg);
  const double cl = std::cos(lat);
  return {r * cl * std::cos(lon), r * cl * std::sin(lon), r * std::sin(lat)};
}

double chord_distance(const EcefPoint& a, const EcefPoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

double radio_horizon(double h1_m, double h2_m) {
  if (h1_m < 0.0 || h2_m < 0.0) {
    throw DomainError(fmt::format("radio horizon needs non-negative heights, got {} and {}", h1_m, h2_m));
  }
  return kHorizonKmPerSqrtMetre * (std::sqrt(h1_m) + std::sqrt(h2_m)) * 1000.0;
}

double geometric_horizon(double h1_m, double h2_m) {
  if (h1_m < 0.0 || h2_m < 0.0) {
    throw DomainError(fmt::format("radio horizon needs non-negative heights, got {} and {}", h1_m, h2_m));
  }
  auto tangent = [](double h) { return std::sqrt(h * (2.0 * kEarthRadius + h)); };
  return tangent(h1_m) + tangent(h2_m);
}

bool within_horizon(const EcefPoint& a, double height_a, const EcefPoint& b, double height_b) {
  return chord_distance(a, b) <= radio_horizon(height_a, height_b);
}

}  // namespace aanet
