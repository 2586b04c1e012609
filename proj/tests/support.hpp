#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "searchplan/array.hpp"
#include "searchplan/instance.hpp"
#include "searchplan/scenario.hpp"

namespace testsupport {

using namespace searchplan;

inline std::string source_path(const std::string& rel) {
  return std::string(SEARCHPLAN_SOURCE_DIR) + "/" + rel;
}

inline bool close_rel(double a, double b, double tol) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= tol * (scale > 0.0 ? scale : 1.0);
}

// Term-by-term array factor with one exponential per element.
inline std::complex<double> scalar_array_factor(const ArrayConfig& cfg, const FeedMatrix& f,
                                                const UvPoint& p, double lambda) {
  std::complex<double> sum = 0.0;
  for (int k = 0; k < cfg.rows; ++k) {
    for (int l = 0; l < cfg.cols; ++l) {
      const double phase = 2.0 * kPi * (k * cfg.dy * p.v + l * cfg.dx * p.u) / lambda;
      sum += f(k, l) * std::complex<double>(std::cos(phase), std::sin(phase));
    }
  }
  return sum;
}

inline double scalar_gain(const ArrayConfig& cfg, const FeedMatrix& f, const UvPoint& p,
                          double lambda) {
  return std::norm(scalar_array_factor(cfg, f, p, lambda));
}

// Direct O(K^2 L^2) inverse DFT of lattice amplitudes indexed by storage
// position; offsets follow the centred lattice convention.
inline std::vector<std::complex<double>> inverse_dft(const std::vector<double>& amp, int K,
                                                     int L) {
  auto offset = [](int i, int n) { return i < n - n / 2 ? i : i - n; };
  std::vector<std::complex<double>> out(static_cast<std::size_t>(K) * L);
  for (int k = 0; k < K; ++k) {
    for (int l = 0; l < L; ++l) {
      std::complex<double> s = 0.0;
      for (int p = 0; p < K; ++p) {
        for (int q = 0; q < L; ++q) {
          const double a = amp[static_cast<std::size_t>(p) * L + q];
          if (a == 0.0) continue;
          const double ph = -2.0 * kPi *
                            (static_cast<double>(k) * offset(p, K) / K +
                             static_cast<double>(l) * offset(q, L) / L);
          s += a * std::complex<double>(std::cos(ph), std::sin(ph));
        }
      }
      out[static_cast<std::size_t>(k) * L + l] = s / static_cast<double>(K * L);
    }
  }
  return out;
}

// Area of the forward image by midpoint integration of the Jacobian over a
// dense 100 x 100 az-el sampling.
inline double sampled_uv_area(const SurveillanceExtent& e, double tilt) {
  const int n = 100;
  const double da = (e.az_max - e.az_min) / n, de = (e.el_max - e.el_min) / n;
  const double h = 1e-7;
  double area = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Direction d{e.az_min + (i + 0.5) * da, e.el_min + (j + 0.5) * de};
      const UvPoint pa = azel_to_uv({d.az + h, d.el}, tilt), ma = azel_to_uv({d.az - h, d.el}, tilt);
      const UvPoint pe = azel_to_uv({d.az, d.el + h}, tilt), me = azel_to_uv({d.az, d.el - h}, tilt);
      const double ua = (pa.u - ma.u) / (2 * h), va = (pa.v - ma.v) / (2 * h);
      const double ue = (pe.u - me.u) / (2 * h), ve = (pe.v - me.v) / (2 * h);
      area += std::abs(ua * ve - va * ue) * da * de;
    }
  }
  return area;
}

// Random coverable instance; costs are integers in [1, max_cost] when
// `integer_costs`, else uniform in [0.5, 3).
inline SetCoverInstance random_instance(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                        double density, bool integer_costs = true,
                                        int max_cost = 5) {
  std::vector<std::vector<std::uint32_t>> colrows(cols);
  std::bernoulli_distribution pick(density);
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t r = 0; r < rows; ++r) {
      if (pick(rng)) colrows[j].push_back(static_cast<std::uint32_t>(r));
    }
  }
  std::uniform_int_distribution<std::size_t> any_col(0, cols - 1);
  for (std::size_t r = 0; r < rows; ++r) {
    bool covered = false;
    for (const auto& c : colrows) covered = covered || std::binary_search(c.begin(), c.end(), r);
    if (!covered) {
      auto& c = colrows[any_col(rng)];
      c.insert(std::lower_bound(c.begin(), c.end(), r), static_cast<std::uint32_t>(r));
    }
  }
  SetCoverInstance inst(rows);
  std::uniform_int_distribution<int> icost(1, max_cost);
  std::uniform_real_distribution<double> rcost(0.5, 3.0);
  for (auto& c : colrows) inst.add_column(integer_costs ? icost(rng) : rcost(rng), c);
  return inst;
}

// Minimum cover cost by enumeration of all 2^cols subsets.
inline double exhaustive_optimum(const SetCoverInstance& inst) {
  const std::size_t n = inst.cols();
  std::vector<std::uint64_t> mask(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::uint32_t r : inst.column(j)) mask[j] |= std::uint64_t{1} << r;
  }
  const std::uint64_t full =
      inst.rows() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << inst.rows()) - 1;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    std::uint64_t covered = 0;
    double cost = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (s >> j & 1) {
        covered |= mask[j];
        cost += inst.cost(j);
      }
    }
    if (covered == full) best = std::min(best, cost);
  }
  return best;
}

inline SetCoverInstance cyclic_instance() {
  SetCoverInstance inst(3);
  const std::vector<std::vector<std::uint32_t>> cols = {{0, 1}, {1, 2}, {0, 2}};
  for (const auto& c : cols) inst.add_column(1.0, c);
  return inst;
}

// Small scenario built in code: 8x8 half-wavelength array over a 2x2 grid.
inline Scenario small_scenario() {
  Scenario s;
  s.name = "small";
  s.array = {8, 8, 0.05, 0.05, deg_to_rad(15.0)};
  s.budget.mean_power = 3.0e24;
  s.budget.reception_gain = 1.0;
  s.budget.uniform_losses = 1.0;
  s.budget.pd = 0.8;
  s.budget.pfa = 1e-6;
  s.budget.a_max = 1.0;
  s.grid.extent = {deg_to_rad(-10.0), deg_to_rad(10.0), deg_to_rad(5.0), deg_to_rad(25.0)};
  s.grid.rows = 2;
  s.grid.cols = 2;
  s.loss = {3.0, s.array.tilt};
  Mission m;
  m.id = "air";
  m.rcs = 1.0;
  m.swerling = Swerling::kSW1;
  m.range = {2000.0, 5000.0, 10000.0, {}};
  s.missions = {m};
  Waveform w;
  w.id = "pulse";
  w.duration = 0.002;
  w.wavelength = 0.1;
  s.waveforms = {w};
  return s;
}

}  // namespace testsupport
