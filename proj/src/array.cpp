#include "searchplan/array.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "searchplan/error.hpp"

namespace searchplan {

void ArrayConfig::validate() const {
  if (rows < 1 || cols < 1) throw ConfigError("array must have at least one row and column");
  if (!(dx > 0.0) || !(dy > 0.0)) throw ConfigError("array spacing must be positive");
  if (!(std::abs(tilt) <= kPi / 2)) throw ConfigError("array tilt must lie in [-90, 90] degrees");
}

FeedMatrix::FeedMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), values_(static_cast<std::size_t>(rows) * cols) {
  if (rows < 1 || cols < 1) throw ConfigError("feed matrix must be at least 1x1");
}

FeedMatrix::FeedMatrix(int rows, int cols, std::vector<Complex> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows < 1 || cols < 1) throw ConfigError("feed matrix must be at least 1x1");
  if (values_.size() != static_cast<std::size_t>(rows) * cols) {
    throw ConfigError("feed matrix value count does not match its shape");
  }
  check_amplitudes();
}

void FeedMatrix::set(int k, int l, Complex a) {
  if (std::abs(a) > 1.0 + kAmplitudeEps) {
    throw ConfigError("feed amplitude exceeds 1 at (" + std::to_string(k) + ", " +
                      std::to_string(l) + ")");
  }
  values_[index(k, l)] = a;
}

double FeedMatrix::max_amplitude() const {
  double best = 0.0;
  for (const Complex& a : values_) best = std::max(best, std::abs(a));
  return best;
}

void FeedMatrix::check_amplitudes() const {
  if (max_amplitude() > 1.0 + kAmplitudeEps) throw ConfigError("feed amplitude exceeds 1");
}

namespace {

void check_shape(const ArrayConfig& cfg, const FeedMatrix& feeds, double wavelength) {
  if (feeds.rows() != cfg.rows || feeds.cols() != cfg.cols) {
    throw ConfigError("feed matrix is " + std::to_string(feeds.rows()) + "x" +
                      std::to_string(feeds.cols()) + " but the array is " +
                      std::to_string(cfg.rows) + "x" + std::to_string(cfg.cols));
  }
  if (!(wavelength > 0.0)) throw ConfigError("wavelength must be positive");
}

}  // namespace

Complex array_factor(const ArrayConfig& cfg, const FeedMatrix& feeds, const UvPoint& p,
                     double wavelength) {
  check_shape(cfg, feeds, wavelength);
  const double ku = 2.0 * kPi * cfg.dx * p.u / wavelength;
  const double kv = 2.0 * kPi * cfg.dy * p.v / wavelength;
  Complex sum{0.0, 0.0};
  for (int k = 0; k < cfg.rows; ++k) {
    for (int l = 0; l < cfg.cols; ++l) {
      sum += feeds(k, l) * std::polar(1.0, k * kv + l * ku);
    }
  }
  return sum;
}

double transmission_gain(const ArrayConfig& cfg, const FeedMatrix& feeds, const UvPoint& p,
                         double wavelength) {
  return std::norm(array_factor(cfg, feeds, p, wavelength));
}

std::vector<double> gain_map(const ArrayConfig& cfg, const FeedMatrix& feeds,
                             std::span<const UvPoint> points, double wavelength) {
  check_shape(cfg, feeds, wavelength);
  std::vector<double> out;
  out.reserve(points.size());
  std::vector<Complex> row_phase(cfg.rows);
  std::vector<Complex> col_phase(cfg.cols);
  for (const UvPoint& p : points) {
    const double ku = 2.0 * kPi * cfg.dx * p.u / wavelength;
    const double kv = 2.0 * kPi * cfg.dy * p.v / wavelength;
    for (int k = 0; k < cfg.rows; ++k) row_phase[k] = std::polar(1.0, k * kv);
    for (int l = 0; l < cfg.cols; ++l) col_phase[l] = std::polar(1.0, l * ku);
    Complex sum{0.0, 0.0};
    for (int k = 0; k < cfg.rows; ++k) {
      Complex row_sum{0.0, 0.0};
      for (int l = 0; l < cfg.cols; ++l) row_sum += feeds(k, l) * col_phase[l];
      sum += row_sum * row_phase[k];
    }
    out.push_back(std::norm(sum));
  }
  return out;
}

}  // namespace searchplan
