#include "searchplan/report.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>

#include "searchplan/error.hpp"
#include "searchplan/format.hpp"

namespace searchplan {

namespace {

std::ofstream open_out(const std::string& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("failed while writing " + path);
}

std::vector<double> to_double(const std::vector<std::uint32_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

bool SolutionReport::feasible() const {
  for (const auto& map : coverage) {
    if (std::find(map.begin(), map.end(), 0u) != map.end()) return false;
  }
  return true;
}

std::uint64_t feed_digest(const FeedMatrix& feeds) {
  std::uint64_t h = fnv1a({});
  for (const Complex& a : feeds.values()) {
    for (double part : {a.real(), a.imag()}) {
      std::uint64_t bits = std::bit_cast<std::uint64_t>(part);
      unsigned char bytes[8];
      for (int i = 0; i < 8; ++i, bits >>= 8) bytes[i] = static_cast<unsigned char>(bits & 0xff);
      h = fnv1a(bytes, h);
    }
  }
  return h;
}

SolutionReport make_report(const Scenario& s, const PlanResult& plan) {
  SolutionReport r;
  r.scenario = s.name;
  r.rows = s.grid.rows;
  r.cols = s.grid.cols;
  for (const Mission& m : s.missions) r.missions.push_back(m.id);
  r.budget = plan.solution.objective;
  r.bound = plan.solution.bound;
  r.proof = plan.solution.proof;
  r.nodes = plan.solution.node_count;
  r.instance_rows = plan.instance.rows();
  r.instance_cols = plan.instance.cols();
  r.raw_candidates = plan.candidates.raw;
  r.feasible_candidates = plan.candidates.feasible;

  const std::size_t cells = s.grid.cell_count();
  const std::size_t nm = s.missions.size();
  const ClutterMap clutter = s.clutter_map();
  r.eclipse = clutter.alpha;
  r.coverage.assign(nm, std::vector<std::uint32_t>(cells, 0));
  r.range.assign(nm, std::vector<double>(cells, 0.0));
  r.required_range.assign(nm, std::vector<double>(cells, 0.0));

  const CoverEngine engine = cover_engine(s);
  const TestLattice& lattice = engine.lattice();
  for (std::size_t i = 0; i < nm; ++i) {
    for (std::size_t c = 0; c < cells; ++c) {
      double rc = 0.0;
      for (std::size_t k : lattice.cell_points(c)) {
        rc = std::max(rc, s.missions[i].range.at(lattice.directions()[k], c));
      }
      r.required_range[i][c] = rc;
    }
  }

  for (std::size_t j : plan.solution.selected) {
    const Dwell& d = plan.candidates.dwells.at(j);
    const DiscreteCover& cover = plan.candidates.covers.at(j);
    SelectedDwell out;
    out.column = j;
    out.rect = d.pattern.source_rect;
    out.waveform = s.waveforms[d.waveform].id;
    out.cost = d.cost;
    for (int m = out.rect.row_lo; m <= out.rect.row_hi; ++m) {
      for (int n = out.rect.col_lo; n <= out.rect.col_hi; ++n) {
        out.rect_area += s.grid.cell_uv_area(m, n, s.array.tilt);
      }
    }
    for (std::size_t i = 0; i < nm; ++i) {
      out.scanned_area.push_back(engine.area(cover.cells[i]));
      for (std::uint32_t c : cover.cells[i]) {
        ++r.coverage[i][c];
        out.cells.push_back(c);
      }
    }
    std::sort(out.cells.begin(), out.cells.end());
    out.cells.erase(std::unique(out.cells.begin(), out.cells.end()), out.cells.end());
    out.feeds = d.pattern.feeds();
    out.digest = feed_digest(out.feeds);

    const std::vector<double> gains = engine.gains(d.pattern);
    const Waveform& w = s.waveforms[d.waveform];
    for (std::size_t i = 0; i < nm; ++i) {
      for (std::size_t c = 0; c < cells; ++c) {
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t k : lattice.cell_points(c)) {
          worst = std::min(worst, detection_range(gains[k], w, s.missions[i], clutter.at(c), s.loss,
                                                  lattice.directions()[k], s.budget));
        }
        r.range[i][c] = std::max(r.range[i][c], worst);
      }
    }
    r.dwells.push_back(std::move(out));
  }
  return r;
}

void write_csv(const std::string& path, const std::vector<double>& values, int rows, int cols) {
  if (values.size() != static_cast<std::size_t>(rows) * cols) throw ConfigError("map size mismatch for " + path);
  std::ofstream out = open_out(path);
  for (int m = 0; m < rows; ++m) {
    for (int n = 0; n < cols; ++n) {
      if (n) out << ',';
      out << format_number(values[static_cast<std::size_t>(m) * cols + n]);
    }
    out << '\n';
  }
  finish(out, path);
}

void write_pgm(const std::string& path, const std::vector<double>& values, int rows, int cols) {
  if (values.size() != static_cast<std::size_t>(rows) * cols) throw ConfigError("map size mismatch for " + path);
  double top = 0.0;
  for (double v : values) {
    if (std::isfinite(v)) top = std::max(top, v);
  }
  std::ofstream out = open_out(path, true);
  out << "P5\n" << cols << ' ' << rows << "\n255\n";
  for (double v : values) {
    unsigned char px = 0;
    if (v > 0.0) {
      const double scaled = std::isfinite(v) ? std::round(255.0 * v / top) : 255.0;
      px = static_cast<unsigned char>(std::clamp(scaled, 1.0, 255.0));
    }
    out.put(static_cast<char>(px));
  }
  finish(out, path);
}

void write_report(const SolutionReport& r, const std::string& out_dir, bool store_feeds) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create report directory " + out_dir + ": " + ec.message());
  const fs::path dir(out_dir);

  YAML::Emitter y;
  y << YAML::BeginMap;
  y << YAML::Key << "scenario" << YAML::Value << r.scenario;
  y << YAML::Key << "status" << YAML::Value << (r.feasible() ? "feasible" : "infeasible");
  y << YAML::Key << "proof" << YAML::Value << to_string(r.proof);
  y << YAML::Key << "budget_s" << YAML::Value << format_number(r.budget);
  y << YAML::Key << "lower_bound_s" << YAML::Value << format_number(r.bound);
  y << YAML::Key << "nodes" << YAML::Value << r.nodes;
  y << YAML::Key << "grid" << YAML::Value << YAML::Flow << YAML::BeginSeq << r.rows << r.cols << YAML::EndSeq;
  y << YAML::Key << "instance" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "rows" << YAML::Value << r.instance_rows;
  y << YAML::Key << "columns" << YAML::Value << r.instance_cols;
  y << YAML::Key << "raw_candidates" << YAML::Value << r.raw_candidates;
  y << YAML::Key << "feasible_candidates" << YAML::Value << r.feasible_candidates;
  y << YAML::EndMap;
  y << YAML::Key << "missions" << YAML::Value << YAML::BeginSeq;
  for (std::size_t i = 0; i < r.missions.size(); ++i) {
    const auto& map = r.coverage[i];
    y << YAML::BeginMap;
    y << YAML::Key << "id" << YAML::Value << r.missions[i];
    y << YAML::Key << "covered_cells" << YAML::Value
      << static_cast<std::size_t>(std::count_if(map.begin(), map.end(), [](std::uint32_t c) { return c > 0; }));
    y << YAML::Key << "max_overlap" << YAML::Value
      << (map.empty() ? 0u : *std::max_element(map.begin(), map.end()));
    y << YAML::EndMap;
  }
  y << YAML::EndSeq;
  y << YAML::Key << "dwells" << YAML::Value << YAML::BeginSeq;
  for (std::size_t k = 0; k < r.dwells.size(); ++k) {
    const SelectedDwell& d = r.dwells[k];
    y << YAML::BeginMap;
    y << YAML::Key << "column" << YAML::Value << d.column;
    y << YAML::Key << "rectangle" << YAML::Value << YAML::Flow << YAML::BeginSeq << d.rect.row_lo
      << d.rect.row_hi << d.rect.col_lo << d.rect.col_hi << YAML::EndSeq;
    y << YAML::Key << "waveform" << YAML::Value << d.waveform;
    y << YAML::Key << "cost_s" << YAML::Value << format_number(d.cost);
    y << YAML::Key << "rect_uv_area" << YAML::Value << format_number(d.rect_area);
    y << YAML::Key << "scanned_uv_area" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (double a : d.scanned_area) y << format_number(a);
    y << YAML::EndSeq;
    y << YAML::Key << "feed_digest" << YAML::Value << hex64(d.digest);
    y << YAML::EndMap;
  }
  y << YAML::EndSeq;
  y << YAML::EndMap;
  {
    const std::string path = (dir / "summary.yaml").string();
    std::ofstream out = open_out(path);
    out << y.c_str() << '\n';
    finish(out, path);
  }

  auto emit = [&](const std::string& stem, const std::vector<double>& values) {
    write_csv((dir / (stem + ".csv")).string(), values, r.rows, r.cols);
    write_pgm((dir / (stem + ".pgm")).string(), values, r.rows, r.cols);
  };
  for (std::size_t i = 0; i < r.missions.size(); ++i) {
    emit("coverage_" + r.missions[i], to_double(r.coverage[i]));
    emit("range_" + r.missions[i], r.range[i]);
    emit("required_" + r.missions[i], r.required_range[i]);
  }
  if (!r.eclipse.empty()) emit("eclipse", r.eclipse);

  if (!store_feeds) return;
  fs::create_directories(dir / "feeds", ec);
  if (ec) throw IoError("cannot create feed directory: " + ec.message());
  for (std::size_t k = 0; k < r.dwells.size(); ++k) {
    const std::string path = (dir / "feeds" / ("dwell_" + std::to_string(k) + ".csv")).string();
    std::ofstream out = open_out(path);
    out << "k,l,amplitude,phase_rad\n";
    const FeedMatrix& f = r.dwells[k].feeds;
    for (int a = 0; a < f.rows(); ++a) {
      for (int b = 0; b < f.cols(); ++b) {
        out << a << ',' << b << ',' << format_number(std::abs(f(a, b))) << ','
            << format_number(std::arg(f(a, b))) << '\n';
      }
    }
    finish(out, path);
  }
}

}  // namespace searchplan
