#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "searchplan/array.hpp"
#include "searchplan/detection.hpp"
#include "searchplan/grid.hpp"

namespace searchplan {

// Inclusive cell-index rectangle of the surveillance grid.
struct SubRectangle {
  int row_lo = 0;
  int row_hi = 0;
  int col_lo = 0;
  int col_hi = 0;

  bool valid_for(const SurveillanceGrid& grid) const;
  bool contains(int m, int n) const {
    return m >= row_lo && m <= row_hi && n >= col_lo && n <= col_hi;
  }
  std::size_t cell_count() const {
    return static_cast<std::size_t>(row_hi - row_lo + 1) * (col_hi - col_lo + 1);
  }
  SurveillanceExtent extent(const SurveillanceGrid& grid) const;
  std::string to_string() const;

  friend bool operator==(const SubRectangle&, const SubRectangle&) = default;
};

// M(M+1)/2 * N(N+1)/2.
std::size_t subrectangle_count(int rows, int cols);

// All sub-rectangles in canonical order: lexicographic in
// (row_lo, row_hi, col_lo, col_hi).
std::vector<SubRectangle> enumerate_subrectangles(const SurveillanceGrid& grid);

// The K x L Woodward-Lawson lattice u_q = q lambda / (L dx),
// v_p = p lambda / (K dy), with p, q centered on zero. Storage index i maps to
// the offset i for i < n - n/2 and to i - n otherwise, which is also the DFT
// index of that sample.
class SampleLattice {
 public:
  SampleLattice(const ArrayConfig& cfg, double wavelength);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return static_cast<std::size_t>(rows_) * cols_; }
  static int offset(int index, int n) { return index < n - n / 2 ? index : index - n; }
  UvPoint point(int row, int col) const {
    return {offset(col, cols_) * u_step_, offset(row, rows_) * v_step_};
  }

 private:
  int rows_;
  int cols_;
  double u_step_;
  double v_step_;
};

// Desired power pattern of one sub-rectangle sampled on the lattice,
// normalized so the largest sample is 1. `peak` is the normalization
// constant, so samples * peak recovers the raw requirement values.
struct IdealPattern {
  SubRectangle rect;
  int rows = 0;
  int cols = 0;
  std::vector<double> samples;  // row-major, storage indices of SampleLattice
  double peak = 0.0;
  bool fallback = false;  // no lattice point fell inside rect
};

// Per-waveform data shared by every sub-rectangle: the lattice, the cell that
// contains each lattice sample, and the per-cell energetic weight
// max_i L_s^2 R_c,i^4 s_w(i, alpha) / sigma_i (maximized over the cell's test
// points; missions that cannot be detected in a cell are skipped).
class SynthesisContext {
 public:
  SynthesisContext(const SurveillanceGrid& grid, const ArrayConfig& cfg, const Waveform& waveform,
                   std::span<const Mission> missions, const ClutterMap& clutter,
                   const ScanLossModel& loss, const RadarBudget& budget, int points_per_edge = 3);

  const SurveillanceGrid& grid() const { return grid_; }
  const ArrayConfig& array() const { return cfg_; }
  double wavelength() const { return wavelength_; }
  const SampleLattice& lattice() const { return lattice_; }
  // Containing cell index per lattice sample, -1 when outside the grid or
  // outside the visible disk.
  const std::vector<int>& sample_cell() const { return sample_cell_; }
  const std::vector<double>& cell_weight() const { return cell_weight_; }

 private:
  SurveillanceGrid grid_;
  ArrayConfig cfg_;
  double wavelength_;
  SampleLattice lattice_;
  std::vector<int> sample_cell_;
  std::vector<double> cell_weight_;
};

IdealPattern ideal_pattern(const SubRectangle& rect, const SynthesisContext& ctx);

struct LatticeSample {
  int row = 0;  // storage indices
  int col = 0;
  double amplitude = 0.0;
};

// Feeds are scale / (K L) times the inverse 2-D DFT of the amplitude samples
// sqrt(ideal); scale makes the largest feed amplitude exactly 1, so the
// array factor equals scale * amplitude at every lattice point.
struct SynthesizedPattern {
  SubRectangle source_rect;
  std::size_t waveform_index = 0;
  double wavelength = 0.0;
  int rows = 0;
  int cols = 0;
  std::vector<LatticeSample> samples;  // non-zero amplitudes, sorted by (row, col)
  double scale = 0.0;
  bool fallback = false;

  FeedMatrix feeds() const;
};

// Throws ConfigError for an all-zero ideal pattern or a lattice that does
// not match the array.
SynthesizedPattern synthesize(const IdealPattern& ideal, const ArrayConfig& cfg, double wavelength,
                              std::size_t waveform_index = 0);

struct SynthesisBatch {
  std::vector<SynthesizedPattern> patterns;  // rectangle-major, then waveform
  std::size_t requested = 0;
  std::vector<std::string> skipped;  // one message per failed job
};

// One pattern per (sub-rectangle, waveform) pair. Failed jobs are skipped
// and reported, never fatal. Output order does not depend on `threads`.
SynthesisBatch synthesize_all(std::span<const SubRectangle> rects,
                              std::span<const SynthesisContext> contexts, unsigned threads = 1);

// Evaluates |array factor|^2 of synthesized patterns at a fixed point set
// directly from their lattice samples, using precomputed Dirichlet kernels:
// AF(u, v) = scale * sum_pq S_pq D_K(v - v_p) D_L(u - u_q).
class PatternEvaluator {
 public:
  PatternEvaluator(const ArrayConfig& cfg, double wavelength, std::span<const UvPoint> points);

  std::size_t size() const { return point_count_; }
  double gain(const SynthesizedPattern& pattern, std::size_t point) const;
  std::vector<double> gains(const SynthesizedPattern& pattern) const;

 private:
  int rows_;
  int cols_;
  std::size_t point_count_;
  std::vector<Complex> row_kernel_;  // point-major, rows_ per point
  std::vector<Complex> col_kernel_;  // point-major, cols_ per point
};

}  // namespace searchplan
