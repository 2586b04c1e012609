#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "searchplan/geometry.hpp"

namespace searchplan {

enum class Swerling { kSW0, kSW1 };

std::string to_string(Swerling sw);
Swerling parse_swerling(const std::string& text);

// Required detection range R_c over the surveillance space. Either derived
// from a (min height, min distance) pair or given per grid cell.
struct RequiredRange {
  double min_height = 0.0;     // meters
  double min_distance = 0.0;   // meters
  double max_range = 0.0;      // instrumented range clamp, meters
  std::vector<double> cell_table;  // row-major M x N; overrides the formula when non-empty

  // max(min_distance, min_height / sin(el)) clamped to max_range; el <= 0
  // maps to max_range.
  double at(const Direction& d, std::size_t cell) const;

  friend bool operator==(const RequiredRange&, const RequiredRange&) = default;
};

struct Mission {
  std::string id;
  double rcs = 1.0;  // m^2
  Swerling swerling = Swerling::kSW1;
  RequiredRange range;

  friend bool operator==(const Mission&, const Mission&) = default;
};

// Threshold-vs-clutter curve for one (waveform, mission) pair; alpha sorted
// ascending, thresholds in dB, +inf marks an undetectable bin.
struct ThresholdCurve {
  std::vector<double> alpha;
  std::vector<double> db;

  friend bool operator==(const ThresholdCurve&, const ThresholdCurve&) = default;
};

struct Waveform {
  std::string id;
  double duration = 0.0;    // T_w, seconds
  double wavelength = 0.0;  // meters
  // Empty means generator mode (closed-form Swerling thresholds). Otherwise
  // keyed by mission id.
  std::map<std::string, ThresholdCurve> table;

  bool table_mode() const { return !table.empty(); }

  friend bool operator==(const Waveform&, const Waveform&) = default;
};

struct RadarBudget {
  double mean_power = 0.0;       // P_m
  double reception_gain = 1.0;   // g_r
  double uniform_losses = 1.0;   // L_u, linear
  double pd = 0.9;
  double pfa = 1e-6;
  double a_max = 0.0;            // uv-area cap per dwell and mission

  friend bool operator==(const RadarBudget&, const RadarBudget&) = default;
};

// L_s(dir) = cos(theta_scan)^(-beta/2); theta_scan is the angle off the array
// normal.
struct ScanLossModel {
  double beta = 3.0;
  double tilt = 0.0;

  // L_s^2; +inf for directions on or behind the array face.
  double loss_squared(const Direction& d) const;

  friend bool operator==(const ScanLossModel&, const ScanLossModel&) = default;
};

// Alpha per grid cell, row-major M x N, each in [0, 1).
struct ClutterMap {
  int rows = 0;
  int cols = 0;
  std::vector<double> alpha;

  double at(std::size_t cell) const { return alpha[cell]; }

  friend bool operator==(const ClutterMap&, const ClutterMap&) = default;
};

// Single-pulse threshold for a Swerling 1 target: ln(pfa)/ln(pd) - 1.
double swerling1_threshold(double pd, double pfa);
// Albersheim's approximation for a non-fluctuating target, one pulse.
double albersheim_threshold(double pd, double pfa);

// Linear SNR threshold s_w(i, alpha). Generator mode evaluates the Swerling
// model at pd' = pd / (1 - alpha). Returns nullopt when the target cannot be
// detected at this clutter level (pd' >= 1 or an infinite table entry).
std::optional<double> snr_threshold(const Waveform& w, const Mission& m, double alpha,
                                    const RadarBudget& budget);

// Fourth root of P_m T_w g_t g_r lambda^2 sigma / ((4 pi)^3 s_w L_u L_s^2).
// Zero for zero gain or an undetectable threshold.
double detection_range(double gain, const Waveform& w, const Mission& m, double alpha,
                       const ScanLossModel& loss, const Direction& d, const RadarBudget& budget);

// Inverse of detection_range: the smallest gain reaching `range`. +inf when
// no gain suffices.
double required_gain(double range, const Waveform& w, const Mission& m, double alpha,
                     const ScanLossModel& loss, const Direction& d, const RadarBudget& budget);

void validate(const RadarBudget& budget);
void validate(const Waveform& w);
void validate(const Mission& m);

}  // namespace searchplan
