#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "searchplan/pipeline.hpp"

namespace searchplan {

struct SelectedDwell {
  std::size_t column = 0;
  SubRectangle rect;
  std::string waveform;
  double cost = 0.0;
  double rect_area = 0.0;              // uv area of the source rectangle
  std::vector<double> scanned_area;    // per mission
  std::vector<std::uint32_t> cells;    // union of covered cells over missions
  std::uint64_t digest = 0;
  FeedMatrix feeds;
};

// Per-mission M x N maps are row-major with row m the m-th elevation band.
struct SolutionReport {
  std::string scenario;
  int rows = 0;
  int cols = 0;
  std::vector<std::string> missions;
  std::vector<SelectedDwell> dwells;
  double budget = 0.0;  // seconds
  double bound = 0.0;
  Proof proof = Proof::kNone;
  std::size_t nodes = 0;
  std::size_t instance_rows = 0;
  std::size_t instance_cols = 0;
  std::size_t raw_candidates = 0;
  std::size_t feasible_candidates = 0;
  std::vector<std::vector<std::uint32_t>> coverage;  // dwells covering each cell
  std::vector<std::vector<double>> range;            // best detection range, meters
  std::vector<std::vector<double>> required_range;   // R_c, meters
  std::vector<double> eclipse;

  // Every mission has every cell covered at least once.
  bool feasible() const;
};

// Digest of a feed matrix: FNV-1a over the little-endian IEEE bytes of
// (re, im) per element, row-major.
std::uint64_t feed_digest(const FeedMatrix& feeds);

// Recomputes the coverage maps from the selected columns' covers, and the
// range maps from the patterns, without consulting the solver.
SolutionReport make_report(const Scenario& scenario, const PlanResult& plan);

// summary.yaml, coverage_<mission>.csv, range_<mission>.csv,
// required_<mission>.csv, eclipse.csv and one .pgm per map. With
// `store_feeds`, feeds/dwell_<k>.csv holds amplitude and phase per element.
void write_report(const SolutionReport& report, const std::string& out_dir,
                  bool store_feeds = false);

// Grayscale P5 image, 8 bits, row-major. Zero maps to 0 and the largest
// value to 255; positive values never map to 0.
void write_pgm(const std::string& path, const std::vector<double>& values, int rows, int cols);
void write_csv(const std::string& path, const std::vector<double>& values, int rows, int cols);

}  // namespace searchplan
