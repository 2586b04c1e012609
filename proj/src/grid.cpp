#include "searchplan/grid.hpp"

#include <array>

#include "searchplan/error.hpp"

namespace searchplan {

void SurveillanceGrid::validate() const {
  if (!extent.valid()) throw ValidationError("grid", "requires az_min < az_max and el_min < el_max");
  if (extent.az_min < -kPi || extent.az_max > kPi) {
    throw ValidationError("grid", "azimuth must lie in [-180, 180] degrees");
  }
  if (extent.el_min < -kPi / 2 || extent.el_max > kPi / 2) {
    throw ValidationError("grid", "elevation must lie in [-90, 90] degrees");
  }
  if (rows < 1 || cols < 1) throw ValidationError("grid", "rows and cols must be positive");
}

SurveillanceExtent SurveillanceGrid::cell_extent(int m, int n) const {
  return {extent.az_min + n * az_step(), extent.az_min + (n + 1) * az_step(),
          extent.el_min + m * el_step(), extent.el_min + (m + 1) * el_step()};
}

Direction SurveillanceGrid::cell_center(int m, int n) const {
  return {extent.az_min + (n + 0.5) * az_step(), extent.el_min + (m + 0.5) * el_step()};
}

std::vector<UvPoint> SurveillanceGrid::boundary_polygon(const SurveillanceExtent& r, double tilt,
                                                        int per_edge) {
  const std::array<Direction, 4> corners{Direction{r.az_min, r.el_min}, Direction{r.az_max, r.el_min},
                                         Direction{r.az_max, r.el_max}, Direction{r.az_min, r.el_max}};
  std::vector<UvPoint> poly;
  poly.reserve(static_cast<std::size_t>(4 * per_edge));
  for (std::size_t e = 0; e < 4; ++e) {
    const Direction& a = corners[e];
    const Direction& b = corners[(e + 1) % 4];
    for (int s = 0; s < per_edge; ++s) {
      const double f = static_cast<double>(s) / per_edge;
      poly.push_back(azel_to_uv({a.az + f * (b.az - a.az), a.el + f * (b.el - a.el)}, tilt));
    }
  }
  return poly;
}

double SurveillanceGrid::cell_uv_area(int m, int n, double tilt) const {
  return polygon_area(boundary_polygon(cell_extent(m, n), tilt, 1));
}

TestLattice::TestLattice(const SurveillanceGrid& grid, double tilt, int points_per_edge)
    : per_edge_(points_per_edge),
      rows_((points_per_edge - 1) * grid.rows + 1),
      cols_((points_per_edge - 1) * grid.cols + 1) {
  if (points_per_edge < 2) throw ConfigError("cover test needs at least 2 points per cell edge");
  const int steps = points_per_edge - 1;
  const double daz = grid.az_step() / steps;
  const double del = grid.el_step() / steps;
  directions_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (int a = 0; a < rows_; ++a) {
    for (int b = 0; b < cols_; ++b) {
      const Direction d{grid.extent.az_min + b * daz, grid.extent.el_min + a * del};
      directions_.push_back(d);
      uv_.push_back(azel_to_uv(d, tilt));
    }
  }
  cell_points_.resize(grid.cell_count());
  for (int m = 0; m < grid.rows; ++m) {
    for (int n = 0; n < grid.cols; ++n) {
      auto& pts = cell_points_[grid.cell_index(m, n)];
      for (int a = 0; a < points_per_edge; ++a) {
        for (int b = 0; b < points_per_edge; ++b) {
          pts.push_back(static_cast<std::size_t>(m * steps + a) * cols_ + (n * steps + b));
        }
      }
    }
  }
}

}  // namespace searchplan
