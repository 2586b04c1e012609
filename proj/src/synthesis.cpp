#include "searchplan/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "searchplan/error.hpp"
#include "searchplan/parallel.hpp"

namespace searchplan {

bool SubRectangle::valid_for(const SurveillanceGrid& grid) const {
  return 0 <= row_lo && row_lo <= row_hi && row_hi < grid.rows && 0 <= col_lo &&
         col_lo <= col_hi && col_hi < grid.cols;
}

SurveillanceExtent SubRectangle::extent(const SurveillanceGrid& grid) const {
  const SurveillanceExtent lo = grid.cell_extent(row_lo, col_lo);
  const SurveillanceExtent hi = grid.cell_extent(row_hi, col_hi);
  return {lo.az_min, hi.az_max, lo.el_min, hi.el_max};
}

std::string SubRectangle::to_string() const {
  return std::to_string(row_lo) + "," + std::to_string(row_hi) + "," + std::to_string(col_lo) +
         "," + std::to_string(col_hi);
}

std::size_t subrectangle_count(int rows, int cols) {
  const auto m = static_cast<std::size_t>(rows);
  const auto n = static_cast<std::size_t>(cols);
  return m * (m + 1) / 2 * (n * (n + 1) / 2);
}

std::vector<SubRectangle> enumerate_subrectangles(const SurveillanceGrid& grid) {
  std::vector<SubRectangle> out;
  out.reserve(subrectangle_count(grid.rows, grid.cols));
  for (int r0 = 0; r0 < grid.rows; ++r0)
    for (int r1 = r0; r1 < grid.rows; ++r1)
      for (int c0 = 0; c0 < grid.cols; ++c0)
        for (int c1 = c0; c1 < grid.cols; ++c1) out.push_back({r0, r1, c0, c1});
  return out;
}

SampleLattice::SampleLattice(const ArrayConfig& cfg, double wavelength)
    : rows_(cfg.rows),
      cols_(cfg.cols),
      u_step_(wavelength / (cfg.cols * cfg.dx)),
      v_step_(wavelength / (cfg.rows * cfg.dy)) {
  if (!(wavelength > 0.0)) throw ConfigError("wavelength must be positive");
}

SynthesisContext::SynthesisContext(const SurveillanceGrid& grid, const ArrayConfig& cfg,
                                   const Waveform& waveform, std::span<const Mission> missions,
                                   const ClutterMap& clutter, const ScanLossModel& loss,
                                   const RadarBudget& budget, int points_per_edge)
    : grid_(grid), cfg_(cfg), wavelength_(waveform.wavelength), lattice_(cfg, waveform.wavelength) {
  if (missions.empty()) throw ConfigError("pattern synthesis needs at least one mission");

  // Which cell each lattice sample falls into.
  std::vector<std::vector<UvPoint>> polygons;
  std::vector<double> lo_u, hi_u, lo_v, hi_v;
  polygons.reserve(grid.cell_count());
  for (int m = 0; m < grid.rows; ++m) {
    for (int n = 0; n < grid.cols; ++n) {
      auto poly = SurveillanceGrid::boundary_polygon(grid.cell_extent(m, n), cfg.tilt, 8);
      double u0 = 2, u1 = -2, v0 = 2, v1 = -2;
      for (const UvPoint& p : poly) {
        u0 = std::min(u0, p.u);
        u1 = std::max(u1, p.u);
        v0 = std::min(v0, p.v);
        v1 = std::max(v1, p.v);
      }
      lo_u.push_back(u0);
      hi_u.push_back(u1);
      lo_v.push_back(v0);
      hi_v.push_back(v1);
      polygons.push_back(std::move(poly));
    }
  }
  sample_cell_.assign(lattice_.size(), -1);
  for (int p = 0; p < lattice_.rows(); ++p) {
    for (int q = 0; q < lattice_.cols(); ++q) {
      const UvPoint s = lattice_.point(p, q);
      if (!uv_visible(s)) continue;
      for (std::size_t c = 0; c < polygons.size(); ++c) {
        if (s.u < lo_u[c] || s.u > hi_u[c] || s.v < lo_v[c] || s.v > hi_v[c]) continue;
        if (point_in_polygon(s, polygons[c])) {
          sample_cell_[static_cast<std::size_t>(p) * lattice_.cols() + q] = static_cast<int>(c);
          break;
        }
      }
    }
  }

  const TestLattice tests(grid, cfg.tilt, points_per_edge);
  cell_weight_.assign(grid.cell_count(), 0.0);
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    const double alpha = clutter.at(c);
    double weight = 0.0;
    for (const Mission& mission : missions) {
      const auto s = snr_threshold(waveform, mission, alpha, budget);
      if (!s) continue;
      for (std::size_t idx : tests.cell_points(c)) {
        const Direction& d = tests.directions()[idx];
        const double rc = mission.range.at(d, c);
        const double ls2 = loss.loss_squared(d);
        if (std::isinf(ls2)) continue;
        weight = std::max(weight, ls2 * rc * rc * rc * rc * *s / mission.rcs);
      }
    }
    cell_weight_[c] = weight;
  }
}

IdealPattern ideal_pattern(const SubRectangle& rect, const SynthesisContext& ctx) {
  const SurveillanceGrid& grid = ctx.grid();
  if (!rect.valid_for(grid)) throw ConfigError("sub-rectangle " + rect.to_string() + " is outside the grid");
  const SampleLattice& lattice = ctx.lattice();
  IdealPattern ideal;
  ideal.rect = rect;
  ideal.rows = lattice.rows();
  ideal.cols = lattice.cols();
  ideal.samples.assign(lattice.size(), 0.0);

  bool any_inside = false;
  double peak = 0.0;
  const auto& sample_cell = ctx.sample_cell();
  for (std::size_t i = 0; i < sample_cell.size(); ++i) {
    const int c = sample_cell[i];
    if (c < 0) continue;
    if (!rect.contains(c / grid.cols, c % grid.cols)) continue;
    any_inside = true;
    const double w = ctx.cell_weight()[static_cast<std::size_t>(c)];
    ideal.samples[i] = w;
    peak = std::max(peak, w);
  }

  if (!any_inside) {
    // Steer a single pencil beam at the visible lattice point closest to the
    // rectangle's centre.
    const SurveillanceExtent e = rect.extent(grid);
    const UvPoint centre =
        azel_to_uv({0.5 * (e.az_min + e.az_max), 0.5 * (e.el_min + e.el_max)}, ctx.array().tilt);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    for (int p = 0; p < lattice.rows(); ++p) {
      for (int q = 0; q < lattice.cols(); ++q) {
        const UvPoint s = lattice.point(p, q);
        if (!uv_visible(s)) continue;
        const double d2 = (s.u - centre.u) * (s.u - centre.u) + (s.v - centre.v) * (s.v - centre.v);
        const std::size_t i = static_cast<std::size_t>(p) * lattice.cols() + q;
        if (d2 < best || (d2 == best && i < best_index)) {
          best = d2;
          best_index = i;
        }
      }
    }
    ideal.samples[best_index] = 1.0;
    ideal.peak = 1.0;
    ideal.fallback = true;
    return ideal;
  }

  ideal.peak = peak;
  if (peak > 0.0) {
    for (double& s : ideal.samples) s /= peak;
  }
  return ideal;
}

SynthesizedPattern synthesize(const IdealPattern& ideal, const ArrayConfig& cfg, double wavelength,
                              std::size_t waveform_index) {
  if (ideal.rows != cfg.rows || ideal.cols != cfg.cols ||
      ideal.samples.size() != cfg.element_count()) {
    throw ConfigError("ideal pattern lattice does not match the array");
  }
  SynthesizedPattern out;
  out.source_rect = ideal.rect;
  out.waveform_index = waveform_index;
  out.wavelength = wavelength;
  out.rows = cfg.rows;
  out.cols = cfg.cols;
  out.fallback = ideal.fallback;
  double total = 0.0;
  for (int p = 0; p < cfg.rows; ++p) {
    for (int q = 0; q < cfg.cols; ++q) {
      const double g = ideal.samples[static_cast<std::size_t>(p) * cfg.cols + q];
      if (g < 0.0) throw ConfigError("ideal pattern has a negative sample");
      if (g == 0.0) continue;
      const double a = std::sqrt(g);
      out.samples.push_back({p, q, a});
      total += a;
    }
  }
  if (out.samples.empty()) {
    throw ConfigError("ideal pattern for " + ideal.rect.to_string() + " is identically zero");
  }
  // Zero-phase non-negative samples put the largest feed magnitude at
  // element (0, 0), where it equals the sample sum over K L.
  out.scale = static_cast<double>(cfg.element_count()) / total;
  return out;
}

FeedMatrix SynthesizedPattern::feeds() const {
  // Separable inverse DFT: first over the column (u) index, then rows.
  const double norm = scale / (static_cast<double>(rows) * cols);
  std::vector<Complex> partial(static_cast<std::size_t>(rows) * cols);  // [p][l]
  for (const LatticeSample& s : samples) {
    const int q = SampleLattice::offset(s.col, cols);
    for (int l = 0; l < cols; ++l) {
      partial[static_cast<std::size_t>(s.row) * cols + l] +=
          s.amplitude * std::polar(1.0, -2.0 * kPi * l * q / cols);
    }
  }
  std::vector<Complex> values(static_cast<std::size_t>(rows) * cols);
  for (int p = 0; p < rows; ++p) {
    const int po = SampleLattice::offset(p, rows);
    for (int k = 0; k < rows; ++k) {
      const Complex tw = std::polar(1.0, -2.0 * kPi * k * po / rows);
      for (int l = 0; l < cols; ++l) {
        values[static_cast<std::size_t>(k) * cols + l] +=
            norm * tw * partial[static_cast<std::size_t>(p) * cols + l];
      }
    }
  }
  // Clamp rounding noise above unit amplitude.
  for (Complex& a : values) {
    const double mag = std::abs(a);
    if (mag > 1.0) a /= mag;
  }
  return FeedMatrix(rows, cols, std::move(values));
}

SynthesisBatch synthesize_all(std::span<const SubRectangle> rects,
                              std::span<const SynthesisContext> contexts, unsigned threads) {
  const std::size_t waveforms = contexts.size();
  const std::size_t jobs = rects.size() * waveforms;
  std::vector<SynthesizedPattern> slots(jobs);
  std::vector<std::string> errors(jobs);
  std::vector<char> ok(jobs, 0);
  parallel_for(jobs, threads, [&](std::size_t job) {
    const SubRectangle& rect = rects[job / waveforms];
    const std::size_t w = job % waveforms;
    const SynthesisContext& ctx = contexts[w];
    try {
      slots[job] = synthesize(ideal_pattern(rect, ctx), ctx.array(), ctx.wavelength(), w);
      ok[job] = 1;
    } catch (const Error& e) {
      errors[job] = "rect " + rect.to_string() + " waveform " + std::to_string(w) + ": " + e.what();
    }
  });
  SynthesisBatch batch;
  batch.requested = jobs;
  for (std::size_t j = 0; j < jobs; ++j) {
    if (ok[j]) {
      batch.patterns.push_back(std::move(slots[j]));
    } else {
      batch.skipped.push_back(std::move(errors[j]));
    }
  }
  return batch;
}

PatternEvaluator::PatternEvaluator(const ArrayConfig& cfg, double wavelength,
                                   std::span<const UvPoint> points)
    : rows_(cfg.rows), cols_(cfg.cols), point_count_(points.size()) {
  row_kernel_.resize(point_count_ * rows_);
  col_kernel_.resize(point_count_ * cols_);
  auto dirichlet = [](double phase_step, int n) {
    Complex sum{0.0, 0.0};
    for (int k = 0; k < n; ++k) sum += std::polar(1.0, k * phase_step);
    return sum / static_cast<double>(n);
  };
  for (std::size_t i = 0; i < point_count_; ++i) {
    const double fu = cfg.dx * points[i].u / wavelength;
    const double fv = cfg.dy * points[i].v / wavelength;
    for (int q = 0; q < cols_; ++q) {
      const double off = static_cast<double>(SampleLattice::offset(q, cols_)) / cols_;
      col_kernel_[i * cols_ + q] = dirichlet(2.0 * kPi * (fu - off), cols_);
    }
    for (int p = 0; p < rows_; ++p) {
      const double off = static_cast<double>(SampleLattice::offset(p, rows_)) / rows_;
      row_kernel_[i * rows_ + p] = dirichlet(2.0 * kPi * (fv - off), rows_);
    }
  }
}

double PatternEvaluator::gain(const SynthesizedPattern& pattern, std::size_t point) const {
  const Complex* rk = &row_kernel_[point * rows_];
  const Complex* ck = &col_kernel_[point * cols_];
  Complex total{0.0, 0.0};
  Complex row_sum{0.0, 0.0};
  int current = -1;
  for (const LatticeSample& s : pattern.samples) {
    if (s.row != current) {
      if (current >= 0) total += rk[current] * row_sum;
      row_sum = {0.0, 0.0};
      current = s.row;
    }
    row_sum += s.amplitude * ck[s.col];
  }
  if (current >= 0) total += rk[current] * row_sum;
  return std::norm(pattern.scale * total);
}

std::vector<double> PatternEvaluator::gains(const SynthesizedPattern& pattern) const {
  std::vector<double> out(point_count_);
  for (std::size_t i = 0; i < point_count_; ++i) out[i] = gain(pattern, i);
  return out;
}

}  // namespace searchplan
