#include "searchplan/covergen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "searchplan/error.hpp"
#include "searchplan/parallel.hpp"

namespace searchplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool detects(double gain, double required) { return gain > 0.0 && gain >= required; }

}  // namespace

bool DiscreteCover::empty() const {
  return std::all_of(cells.begin(), cells.end(), [](const auto& c) { return c.empty(); });
}

bool DiscreteCover::covers(std::size_t mission, std::uint32_t cell) const {
  const auto& c = cells[mission];
  return std::binary_search(c.begin(), c.end(), cell);
}

bool cell_test(const FeedMatrix& feeds, const ArrayConfig& cfg, const Waveform& w,
               const Mission& mission, const SurveillanceGrid& grid, const ClutterMap& clutter,
               int m, int n, const ScanLossModel& loss, const RadarBudget& budget,
               int points_per_edge) {
  const SurveillanceExtent e = grid.cell_extent(m, n);
  const std::size_t cell = grid.cell_index(m, n);
  const int steps = points_per_edge - 1;
  for (int a = 0; a <= steps; ++a) {
    for (int b = 0; b <= steps; ++b) {
      const Direction d{e.az_min + b * (e.az_max - e.az_min) / steps,
                        e.el_min + a * (e.el_max - e.el_min) / steps};
      const double gain = transmission_gain(cfg, feeds, azel_to_uv(d, cfg.tilt), w.wavelength);
      const double range = detection_range(gain, w, mission, clutter.at(cell), loss, d, budget);
      if (!(range > 0.0) || range < mission.range.at(d, cell)) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> discrete_cover(const FeedMatrix& feeds, const ArrayConfig& cfg,
                                          const Waveform& w, const Mission& mission,
                                          const SurveillanceGrid& grid, const ClutterMap& clutter,
                                          const ScanLossModel& loss, const RadarBudget& budget,
                                          int points_per_edge) {
  std::vector<std::uint32_t> out;
  for (int m = 0; m < grid.rows; ++m) {
    for (int n = 0; n < grid.cols; ++n) {
      if (cell_test(feeds, cfg, w, mission, grid, clutter, m, n, loss, budget, points_per_edge)) {
        out.push_back(static_cast<std::uint32_t>(grid.cell_index(m, n)));
      }
    }
  }
  return out;
}

CoverEngine::CoverEngine(const SurveillanceGrid& grid, const ArrayConfig& cfg,
                         std::span<const Waveform> waveforms, std::span<const Mission> missions,
                         const ClutterMap& clutter, const ScanLossModel& loss,
                         const RadarBudget& budget, int points_per_edge)
    : grid_(grid),
      lattice_(grid, cfg.tilt, points_per_edge),
      waveforms_(waveforms.size()),
      missions_(missions.size()),
      per_cell_(static_cast<std::size_t>(points_per_edge) * points_per_edge),
      a_max_(budget.a_max) {
  const std::size_t cells = grid.cell_count();
  for (const Waveform& w : waveforms) evaluators_.emplace_back(cfg, w.wavelength, lattice_.uv());
  required_.resize(waveforms_ * missions_ * cells * per_cell_);
  for (std::size_t w = 0; w < waveforms_; ++w) {
    for (std::size_t i = 0; i < missions_; ++i) {
      for (std::size_t c = 0; c < cells; ++c) {
        const auto& pts = lattice_.cell_points(c);
        for (std::size_t k = 0; k < per_cell_; ++k) {
          const Direction& d = lattice_.directions()[pts[k]];
          required_[((w * missions_ + i) * cells + c) * per_cell_ + k] =
              required_gain(missions[i].range.at(d, c), waveforms[w], missions[i], clutter.at(c),
                            loss, d, budget);
        }
      }
    }
  }
  cell_areas_.resize(cells);
  for (int m = 0; m < grid.rows; ++m) {
    for (int n = 0; n < grid.cols; ++n) cell_areas_[grid.cell_index(m, n)] = grid.cell_uv_area(m, n, cfg.tilt);
  }
}

double CoverEngine::required(std::size_t waveform, std::size_t mission, std::size_t cell,
                             std::size_t k) const {
  return required_[((waveform * missions_ + mission) * grid_.cell_count() + cell) * per_cell_ + k];
}

std::vector<double> CoverEngine::gains(const SynthesizedPattern& pattern) const {
  return evaluators_.at(pattern.waveform_index).gains(pattern);
}

DiscreteCover CoverEngine::covers(const SynthesizedPattern& pattern) const {
  const std::size_t w = pattern.waveform_index;
  const PatternEvaluator& eval = evaluators_.at(w);
  const std::size_t cells = grid_.cell_count();
  std::vector<double> cache(lattice_.size(), -1.0);
  auto gain_at = [&](std::size_t point) {
    double& g = cache[point];
    if (g < 0.0) g = eval.gain(pattern, point);
    return g;
  };
  const int p = lattice_.points_per_edge();
  const std::size_t probe = static_cast<std::size_t>(p / 2) * p + p / 2;

  DiscreteCover out;
  out.cells.resize(missions_);
  for (std::size_t c = 0; c < cells; ++c) {
    const auto& pts = lattice_.cell_points(c);
    const double g_probe = gain_at(pts[probe]);
    for (std::size_t i = 0; i < missions_; ++i) {
      const double* req = &required_[((w * missions_ + i) * cells + c) * per_cell_];
      if (!detects(g_probe, req[probe])) continue;
      bool all = true;
      for (std::size_t k = 0; k < per_cell_ && all; ++k) all = detects(gain_at(pts[k]), req[k]);
      if (all) out.cells[i].push_back(static_cast<std::uint32_t>(c));
    }
  }
  return out;
}

double CoverEngine::area(std::span<const std::uint32_t> cells) const {
  double total = 0.0;
  for (std::uint32_t c : cells) total += cell_areas_[c];
  return total;
}

ScannedArea CoverEngine::scanned_area(const SynthesizedPattern& pattern, std::size_t mission) const {
  ScannedArea out;
  out.cells = covers(pattern).cells.at(mission);
  out.area = area(out.cells);
  out.feasible = out.area <= a_max_;
  return out;
}

CandidateSet build_candidates(SynthesisBatch batch, std::span<const Waveform> waveforms,
                              const CoverEngine& engine, const CandidateOptions& options) {
  CandidateSet out;
  out.raw = batch.requested;
  out.synthesized = batch.patterns.size();

  const std::size_t n = batch.patterns.size();
  std::vector<DiscreteCover> covers(n);
  std::vector<char> keep(n, 0);
  parallel_for(n, options.threads, [&](std::size_t j) {
    DiscreteCover cover = engine.covers(batch.patterns[j]);
    if (cover.empty()) return;
    for (const auto& cells : cover.cells) {
      if (engine.area(cells) > engine.a_max()) return;
    }
    covers[j] = std::move(cover);
    keep[j] = 1;
  });

  std::vector<std::size_t> survivors;
  for (std::size_t j = 0; j < n; ++j) {
    if (keep[j]) survivors.push_back(j);
  }
  out.feasible = survivors.size();

  if (options.remove_duplicates) {
    // For each distinct cover keep the cheapest column, lowest index on ties.
    std::map<std::vector<std::vector<std::uint32_t>>, std::size_t> best;
    for (std::size_t j : survivors) {
      const double cost = waveforms[batch.patterns[j].waveform_index].duration;
      auto [it, inserted] = best.try_emplace(covers[j].cells, j);
      if (!inserted) {
        const double incumbent = waveforms[batch.patterns[it->second].waveform_index].duration;
        if (cost < incumbent) it->second = j;
      }
    }
    std::vector<char> chosen(n, 0);
    for (const auto& [cells, j] : best) chosen[j] = 1;
    std::vector<std::size_t> kept;
    for (std::size_t j : survivors) {
      if (chosen[j]) kept.push_back(j);
    }
    out.duplicates = survivors.size() - kept.size();
    survivors = std::move(kept);
  }

  if (survivors.empty()) {
    throw UncoverableError("scenario uncoverable with candidate set: no dwell survives the a_max and "
                           "non-empty cover filters");
  }
  out.dwells.reserve(survivors.size());
  out.covers.reserve(survivors.size());
  for (std::size_t j : survivors) {
    const std::size_t w = batch.patterns[j].waveform_index;
    out.dwells.push_back({std::move(batch.patterns[j]), w, waveforms[w].duration});
    out.covers.push_back(std::move(covers[j]));
  }
  return out;
}

SetCoverInstance assemble_instance(const CandidateSet& candidates,
                                   std::span<const Mission> missions,
                                   const SurveillanceGrid& grid) {
  const std::size_t cells = grid.cell_count();
  SetCoverInstance inst(missions.size() * cells);
  std::vector<std::uint32_t> rows;
  for (std::size_t j = 0; j < candidates.dwells.size(); ++j) {
    const DiscreteCover& cover = candidates.covers[j];
    if (cover.cells.size() != missions.size()) {
      throw ConfigError("cover of dwell " + std::to_string(j) + " has the wrong mission count");
    }
    rows.clear();
    for (std::size_t i = 0; i < missions.size(); ++i) {
      for (std::uint32_t c : cover.cells[i]) rows.push_back(static_cast<std::uint32_t>(i * cells + c));
    }
    inst.add_column(candidates.dwells[j].cost, rows);
  }
  const std::size_t empty = inst.first_empty_row();
  if (empty < inst.rows()) {
    const std::size_t i = empty / cells;
    const std::size_t c = empty % cells;
    throw UncoverableError("uncoverable cell: mission '" + missions[i].id + "' cell (m=" +
                           std::to_string(c / grid.cols) + ", n=" + std::to_string(c % grid.cols) +
                           ") is not covered by any candidate dwell");
  }
  return inst;
}

}  // namespace searchplan
