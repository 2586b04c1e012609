#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "searchplan/array.hpp"
#include "searchplan/detection.hpp"
#include "searchplan/grid.hpp"
#include "searchplan/instance.hpp"
#include "searchplan/synthesis.hpp"

namespace searchplan {

// One candidate look: a synthesized pattern transmitted with one waveform.
struct Dwell {
  SynthesizedPattern pattern;
  std::size_t waveform = 0;
  double cost = 0.0;  // T_w, seconds
};

// Covered cells per mission, ascending row-major cell indices.
struct DiscreteCover {
  std::vector<std::vector<std::uint32_t>> cells;

  bool empty() const;
  bool covers(std::size_t mission, std::uint32_t cell) const;
  friend bool operator==(const DiscreteCover&, const DiscreteCover&) = default;
};

// Reference cover test: evaluates the array factor of `feeds` and the radar
// equation at every test point of cell (m, n). True iff the detection range
// is positive and reaches R_c at all of them.
bool cell_test(const FeedMatrix& feeds, const ArrayConfig& cfg, const Waveform& w,
               const Mission& mission, const SurveillanceGrid& grid, const ClutterMap& clutter,
               int m, int n, const ScanLossModel& loss, const RadarBudget& budget,
               int points_per_edge = 3);

// Reference per-mission cover of a dwell (cell_test lifted over the grid).
std::vector<std::uint32_t> discrete_cover(const FeedMatrix& feeds, const ArrayConfig& cfg,
                                          const Waveform& w, const Mission& mission,
                                          const SurveillanceGrid& grid, const ClutterMap& clutter,
                                          const ScanLossModel& loss, const RadarBudget& budget,
                                          int points_per_edge = 3);

struct ScannedArea {
  std::vector<std::uint32_t> cells;
  double area = 0.0;  // uv area
  bool feasible = true;  // area <= a_max
};

// Fast cover evaluation for many patterns over one scenario. Detection is
// tested as gain >= required gain, with the required gain per (waveform,
// mission, cell, test point) precomputed from the inverted radar equation,
// and gains taken from the patterns' lattice samples. A cell's interior
// point is tested first so cells far from the beam cost one evaluation.
class CoverEngine {
 public:
  CoverEngine(const SurveillanceGrid& grid, const ArrayConfig& cfg,
              std::span<const Waveform> waveforms, std::span<const Mission> missions,
              const ClutterMap& clutter, const ScanLossModel& loss, const RadarBudget& budget,
              int points_per_edge = 3);

  const SurveillanceGrid& grid() const { return grid_; }
  const TestLattice& lattice() const { return lattice_; }
  std::size_t mission_count() const { return missions_; }
  const std::vector<double>& cell_areas() const { return cell_areas_; }
  double a_max() const { return a_max_; }

  DiscreteCover covers(const SynthesizedPattern& pattern) const;
  double area(std::span<const std::uint32_t> cells) const;
  ScannedArea scanned_area(const SynthesizedPattern& pattern, std::size_t mission) const;

  // Gain of `pattern` at every test point.
  std::vector<double> gains(const SynthesizedPattern& pattern) const;
  // Required gain at test point k (0 .. P^2-1) of `cell`; +inf when the
  // mission cannot be detected there.
  double required(std::size_t waveform, std::size_t mission, std::size_t cell, std::size_t k) const;

 private:
  SurveillanceGrid grid_;
  TestLattice lattice_;
  std::size_t waveforms_;
  std::size_t missions_;
  std::size_t per_cell_;
  double a_max_;
  std::vector<PatternEvaluator> evaluators_;  // per waveform
  std::vector<double> required_;  // [waveform][mission][cell][k]
  std::vector<double> cell_areas_;
};

struct CandidateSet {
  std::vector<Dwell> dwells;  // canonical order: rectangle, then waveform
  std::vector<DiscreteCover> covers;
  std::size_t raw = 0;            // (rectangle, waveform) pairs
  std::size_t synthesized = 0;    // pairs with a synthesizable pattern
  std::size_t feasible = 0;       // passed the a_max and non-empty filters
  std::size_t duplicates = 0;     // removed as identical-cover, no-cheaper columns
};

struct CandidateOptions {
  unsigned threads = 1;
  bool remove_duplicates = true;
};

// Computes covers for every synthesized pattern, drops dwells that exceed
// a_max for some mission or cover nothing, then keeps one cheapest column
// per distinct cover. Throws UncoverableError when nothing survives.
CandidateSet build_candidates(SynthesisBatch batch, std::span<const Waveform> waveforms,
                              const CoverEngine& engine, const CandidateOptions& options = {});

// Rows are mission * M * N + m * N + n. Throws UncoverableError naming the
// first row no dwell covers.
SetCoverInstance assemble_instance(const CandidateSet& candidates,
                                   std::span<const Mission> missions,
                                   const SurveillanceGrid& grid);

}  // namespace searchplan
