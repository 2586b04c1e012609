#pragma once

#include <cstddef>
#include <vector>

#include "searchplan/geometry.hpp"

namespace searchplan {

// Uniform M x N partition of the surveillance extent in az-el. Row m is the
// m-th elevation band counted from el_min, column n the n-th azimuth band
// counted from az_min. Cells are indexed row-major: m * N + n.
struct SurveillanceGrid {
  SurveillanceExtent extent;
  int rows = 1;  // M
  int cols = 1;  // N

  void validate() const;
  std::size_t cell_count() const { return static_cast<std::size_t>(rows) * cols; }
  std::size_t cell_index(int m, int n) const { return static_cast<std::size_t>(m) * cols + n; }
  double az_step() const { return (extent.az_max - extent.az_min) / cols; }
  double el_step() const { return (extent.el_max - extent.el_min) / rows; }

  SurveillanceExtent cell_extent(int m, int n) const;
  Direction cell_center(int m, int n) const;

  // Forward image of the boundary of the az-el rectangle [az0, az1] x
  // [el0, el1], `per_edge` samples per edge, counter-clockwise in az-el.
  static std::vector<UvPoint> boundary_polygon(const SurveillanceExtent& rect, double tilt,
                                               int per_edge = 8);

  // uv area of a cell, shoelace over its four mapped corners.
  double cell_uv_area(int m, int n, double tilt) const;

  friend bool operator==(const SurveillanceGrid&, const SurveillanceGrid&) = default;
};

// Directions at which cover tests are evaluated. Each cell owns a
// points_per_edge x points_per_edge sub-lattice (corners, edge points and
// interior); neighbouring cells share their boundary points.
class TestLattice {
 public:
  TestLattice(const SurveillanceGrid& grid, double tilt, int points_per_edge = 3);

  int points_per_edge() const { return per_edge_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return directions_.size(); }
  const std::vector<Direction>& directions() const { return directions_; }
  const std::vector<UvPoint>& uv() const { return uv_; }

  // Indices into directions() of the test points of cell (m, n).
  const std::vector<std::size_t>& cell_points(std::size_t cell) const { return cell_points_[cell]; }

 private:
  int per_edge_;
  int rows_;
  int cols_;
  std::vector<Direction> directions_;
  std::vector<UvPoint> uv_;
  std::vector<std::vector<std::size_t>> cell_points_;
};

}  // namespace searchplan
