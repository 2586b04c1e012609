#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "searchplan/array.hpp"
#include "searchplan/detection.hpp"
#include "searchplan/grid.hpp"

namespace searchplan {

// Az-el rectangle with its own eclipse coefficient. A cell belongs to the
// region when its centre does; later regions override earlier ones.
struct ClutterRegion {
  std::string name;
  SurveillanceExtent extent;  // radians
  double alpha = 0.0;

  friend bool operator==(const ClutterRegion&, const ClutterRegion&) = default;
};

struct ClutterSpec {
  double default_alpha = 0.0;
  std::vector<ClutterRegion> regions;
  std::vector<double> table;  // row-major M x N, replaces the regions when non-empty

  ClutterMap build(const SurveillanceGrid& grid) const;

  friend bool operator==(const ClutterSpec&, const ClutterSpec&) = default;
};

struct Scenario {
  std::string name;
  ArrayConfig array;
  RadarBudget budget;
  SurveillanceGrid grid;
  ScanLossModel loss;  // tilt mirrors array.tilt
  int points_per_edge = 3;
  std::vector<Mission> missions;
  std::vector<Waveform> waveforms;
  ClutterSpec clutter;

  ClutterMap clutter_map() const { return clutter.build(grid); }
  // Index of the waveform or mission with this id; throws ConfigError.
  std::size_t waveform_index(const std::string& id) const;
  std::size_t mission_index(const std::string& id) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Checks every invariant; errors carry the dotted field path.
void validate(const Scenario& scenario);

// Relative threshold_table paths resolve against `base_dir`.
Scenario parse_scenario(std::istream& in, const std::string& base_dir = ".");
Scenario load_scenario(const std::string& path);

// Writes a self-contained file (threshold tables inlined) that loads back to
// an identical Scenario.
void save_scenario(std::ostream& out, const Scenario& scenario);
void save_scenario(const std::string& path, const Scenario& scenario);

// Columnar threshold file: `waveform_id mission_id alpha threshold_db` per
// line, '#' comments, "inf" for undetectable bins. Appends the rows for
// `waveform.id` to its table.
void load_threshold_table(const std::string& path, Waveform& waveform);

}  // namespace searchplan
