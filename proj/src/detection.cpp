#include "searchplan/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "searchplan/error.hpp"

namespace searchplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kFourPiCubed = std::pow(4.0 * kPi, 3);

double from_db(double db) { return std::pow(10.0, db / 10.0); }

// Linear-in-dB interpolation, clamped to the first and last bins.
double interpolate_db(const ThresholdCurve& c, double alpha) {
  const auto& a = c.alpha;
  if (alpha <= a.front()) return c.db.front();
  if (alpha >= a.back()) return c.db.back();
  const auto hi = static_cast<std::size_t>(std::upper_bound(a.begin(), a.end(), alpha) - a.begin());
  const std::size_t lo = hi - 1;
  if (alpha == a[lo]) return c.db[lo];
  if (std::isinf(c.db[lo]) || std::isinf(c.db[hi])) return kInf;
  const double f = (alpha - a[lo]) / (a[hi] - a[lo]);
  return c.db[lo] + f * (c.db[hi] - c.db[lo]);
}

}  // namespace

std::string to_string(Swerling sw) { return sw == Swerling::kSW0 ? "SW0" : "SW1"; }

Swerling parse_swerling(const std::string& text) {
  if (text == "SW0") return Swerling::kSW0;
  if (text == "SW1") return Swerling::kSW1;
  throw ConfigError("unsupported Swerling model '" + text + "' (expected SW0 or SW1)");
}

double RequiredRange::at(const Direction& d, std::size_t cell) const {
  if (!cell_table.empty()) return cell_table[cell];
  if (d.el <= 0.0) return max_range;
  return std::min(max_range, std::max(min_distance, min_height / std::sin(d.el)));
}

double ScanLossModel::loss_squared(const Direction& d) const {
  const double c = boresight_cosine(d, tilt);
  if (c <= 0.0) return kInf;
  return std::pow(c, -beta);
}

double swerling1_threshold(double pd, double pfa) { return std::log(pfa) / std::log(pd) - 1.0; }

double albersheim_threshold(double pd, double pfa) {
  const double a = std::log(0.62 / pfa);
  const double b = std::log(pd / (1.0 - pd));
  // N = 1: the -5 log10(N) term vanishes.
  const double coeff = 6.2 + 4.54 / std::sqrt(1.0 + 0.44);
  return from_db(coeff * std::log10(a + 0.12 * a * b + 1.7 * b));
}

std::optional<double> snr_threshold(const Waveform& w, const Mission& m, double alpha,
                                    const RadarBudget& budget) {
  if (w.table_mode()) {
    const auto it = w.table.find(m.id);
    if (it == w.table.end()) {
      throw ConfigError("waveform '" + w.id + "' has no threshold curve for mission '" + m.id + "'");
    }
    const double db = interpolate_db(it->second, alpha);
    if (std::isinf(db)) return std::nullopt;
    return from_db(db);
  }
  const double pd_eff = budget.pd / (1.0 - alpha);
  if (!(pd_eff < 1.0)) return std::nullopt;
  switch (m.swerling) {
    case Swerling::kSW0:
      return albersheim_threshold(pd_eff, budget.pfa);
    case Swerling::kSW1:
      return swerling1_threshold(pd_eff, budget.pfa);
  }
  return std::nullopt;
}

double detection_range(double gain, const Waveform& w, const Mission& m, double alpha,
                       const ScanLossModel& loss, const Direction& d, const RadarBudget& budget) {
  if (!(gain > 0.0)) return 0.0;
  const auto s = snr_threshold(w, m, alpha, budget);
  if (!s) return 0.0;
  const double ls2 = loss.loss_squared(d);
  if (std::isinf(ls2)) return 0.0;
  const double num = budget.mean_power * w.duration * gain * budget.reception_gain *
                     w.wavelength * w.wavelength * m.rcs;
  const double den = kFourPiCubed * *s * budget.uniform_losses * ls2;
  return std::pow(num / den, 0.25);
}

double required_gain(double range, const Waveform& w, const Mission& m, double alpha,
                     const ScanLossModel& loss, const Direction& d, const RadarBudget& budget) {
  const auto s = snr_threshold(w, m, alpha, budget);
  if (!s) return kInf;
  const double ls2 = loss.loss_squared(d);
  if (std::isinf(ls2)) return kInf;
  const double r2 = range * range;
  return r2 * r2 * kFourPiCubed * *s * budget.uniform_losses * ls2 /
         (budget.mean_power * w.duration * budget.reception_gain * w.wavelength * w.wavelength *
          m.rcs);
}

void validate(const RadarBudget& b) {
  if (!(b.mean_power > 0.0)) throw ValidationError("budget.mean_power_w", "must be positive");
  if (!(b.reception_gain > 0.0)) throw ValidationError("budget.reception_gain", "must be positive");
  if (!(b.uniform_losses >= 1.0)) throw ValidationError("budget.uniform_losses", "must be >= 1");
  if (!(b.pfa > 0.0 && b.pfa < b.pd && b.pd < 1.0)) {
    throw ValidationError("budget", "requires 0 < pfa < pd < 1");
  }
  if (!(b.a_max > 0.0)) throw ValidationError("budget.a_max", "must be positive");
}

void validate(const Waveform& w) {
  if (!(w.duration > 0.0)) throw ValidationError("duration_s", "must be positive");
  if (!(w.wavelength > 0.0)) throw ValidationError("wavelength_m", "must be positive");
  for (const auto& [mission, curve] : w.table) {
    const std::string field = "thresholds." + mission;
    if (curve.alpha.empty() || curve.alpha.size() != curve.db.size()) {
      throw ValidationError(field, "needs matching non-empty alpha and threshold columns");
    }
    for (std::size_t i = 0; i < curve.alpha.size(); ++i) {
      if (!(curve.alpha[i] >= 0.0 && curve.alpha[i] < 1.0)) {
        throw ValidationError(field, "alpha must lie in [0, 1)");
      }
      if (std::isnan(curve.db[i]) || curve.db[i] == -kInf) {
        throw ValidationError(field, "threshold must be finite or +inf");
      }
      if (i > 0 && !(curve.alpha[i] > curve.alpha[i - 1])) {
        throw ValidationError(field, "alpha bins must be strictly increasing");
      }
      if (i > 0 && curve.db[i] < curve.db[i - 1]) {
        throw ValidationError(field, "thresholds must be non-decreasing in alpha");
      }
    }
  }
}

void validate(const Mission& m) {
  if (!(m.rcs > 0.0)) throw ValidationError("rcs_m2", "must be positive");
  const RequiredRange& r = m.range;
  if (r.cell_table.empty()) {
    if (!(r.min_distance > 0.0)) {
      throw ValidationError("required_range.min_distance_m", "must be positive");
    }
    if (!(r.min_height >= 0.0)) {
      throw ValidationError("required_range.min_height_m", "must be non-negative");
    }
    if (!(r.max_range >= r.min_distance)) {
      throw ValidationError("required_range.max_range_m", "must be >= min_distance_m");
    }
  } else {
    for (double v : r.cell_table) {
      if (!(v > 0.0)) throw ValidationError("required_range.table", "entries must be positive");
    }
  }
}

}  // namespace searchplan
