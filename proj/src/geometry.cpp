#include "searchplan/geometry.hpp"

#include <cmath>
#include <cstddef>

namespace searchplan {

UvPoint azel_to_uv(const Direction& d, double tilt) {
  const double ce = std::cos(d.el);
  return {ce * std::sin(d.az),
          std::sin(d.el) * std::cos(tilt) - std::sin(tilt) * std::cos(d.az) * ce};
}

bool uv_visible(const UvPoint& p) { return p.u * p.u + p.v * p.v <= 1.0 + kVisibilityEps; }

double boresight_cosine(const Direction& d, double tilt) {
  return std::cos(d.el) * std::cos(d.az) * std::cos(tilt) + std::sin(d.el) * std::sin(tilt);
}

double polygon_area(std::span<const UvPoint> pts) {
  const std::size_t count = pts.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const UvPoint& a = pts[i];
    const UvPoint& b = pts[(i + 1) % count];
    twice += a.u * b.v - b.u * a.v;
  }
  return std::abs(twice) * 0.5;
}

bool point_in_polygon(const UvPoint& p, std::span<const UvPoint> pts) {
  const std::size_t count = pts.size();
  if (count < 3) return false;
  bool inside = false;
  for (std::size_t i = 0, j = count - 1; i < count; j = i++) {
    const UvPoint& a = pts[i];
    const UvPoint& b = pts[j];
    if ((a.v > p.v) != (b.v > p.v)) {
      const double cross = (b.u - a.u) * (p.v - a.v) / (b.v - a.v) + a.u;
      if (p.u < cross) inside = !inside;
    }
  }
  return inside;
}

}  // namespace searchplan
