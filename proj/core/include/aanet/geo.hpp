#pragma once

// Spherical-Earth geometry: coordinate frames, chord distances and the
// line-of-sight radio horizon between elevated nodes.

#include <cmath>

#include "aanet/units.hpp"

namespace aanet {

/// Earth-centred Cartesian point in metres. The z axis is the polar axis and
/// the x axis passes through latitude 0, longitude 0.
struct EcefPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  friend bool operator==(const EcefPoint&, const EcefPoint&) = default;
};

/// (r, theta, phi) with theta the polar angle measured from +z and phi the
/// azimuth measured from +x towards +y.
struct SphericalCoord {
  double r = kEarthRadius;
  double theta = 0.0;
  double phi = 0.0;
};

struct GeodeticCoord {
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;
  double altitude_m = 0.0;
};

/// Throws DomainError when r < R_earth or an angle is outside its range.
void validate(const SphericalCoord& c);
void validate(const GeodeticCoord& c);

EcefPoint spherical_to_ecef(const SphericalCoord& c);

/// Spherical Earth of radius kEarthRadius; altitude is added to the radius.
EcefPoint geodetic_to_ecef(const GeodeticCoord& c);

/// Straight-line (chord) distance in metres.
double chord_distance(const EcefPoint& a, const EcefPoint& b);

/// Height of a point above the spherical surface.
inline double height_above_surface(const EcefPoint& p) { return p.norm() - kEarthRadius; }

/// Maximum line-of-sight distance in metres between two nodes at heights h1
/// and h2 (metres): 3.57 (sqrt(h1) + sqrt(h2)) km. Negative heights throw
/// DomainError.
double radio_horizon(double h1_m, double h2_m);

/// Exact tangent-line horizon over the sphere: sqrt((R+h1)^2 - R^2) +
/// sqrt((R+h2)^2 - R^2). Agrees with radio_horizon to within 0.05% at
/// aircraft heights, and stays valid at geostationary altitude where the
/// square-root approximation underestimates the range by half.
double geometric_horizon(double h1_m, double h2_m);

/// True when the chord between the two positions does not exceed the radio
/// horizon for the two heights.
bool within_horizon(const EcefPoint& a, double height_a, const EcefPoint& b, double height_b);

}  // namespace aanet
