#pragma once

#include <numbers>
#include <span>

namespace searchplan {

inline constexpr double kPi = std::numbers::pi;

// Tolerance on the unit-disk visibility test.
inline constexpr double kVisibilityEps = 1e-12;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// Azimuth/elevation direction in radians.
struct Direction {
  double az = 0.0;
  double el = 0.0;
};

// Direction cosines relative to the (tilted) array face.
struct UvPoint {
  double u = 0.0;
  double v = 0.0;
};

// The rectangle [az_min, az_max] x [el_min, el_max], radians.
struct SurveillanceExtent {
  double az_min = 0.0;
  double az_max = 0.0;
  double el_min = 0.0;
  double el_max = 0.0;

  bool valid() const { return az_min < az_max && el_min < el_max; }
  friend bool operator==(const SurveillanceExtent&, const SurveillanceExtent&) = default;
};

// u = cos(el) sin(az), v = sin(el) cos(t) - sin(t) cos(az) cos(el).
UvPoint azel_to_uv(const Direction& d, double tilt);

bool uv_visible(const UvPoint& p);

// Direction cosine along the array normal, i.e. cos of the scan angle off
// boresight. Negative for directions behind the array face.
double boresight_cosine(const Direction& d, double tilt);

// Area of a simple polygon (shoelace).
double polygon_area(std::span<const UvPoint> poly);

// Even-odd point-in-polygon test.
bool point_in_polygon(const UvPoint& p, std::span<const UvPoint> poly);

}  // namespace searchplan
