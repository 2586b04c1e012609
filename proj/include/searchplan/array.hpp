#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "searchplan/geometry.hpp"

namespace searchplan {

using Complex = std::complex<double>;

inline constexpr double kAmplitudeEps = 1e-9;

// Planar array of K rows (spacing dy) by L columns (spacing dx) of isotropic
// elements, tilted by `tilt` radians.
struct ArrayConfig {
  int rows = 1;      // K
  int cols = 1;      // L
  double dx = 0.5;   // column spacing, meters
  double dy = 0.5;   // row spacing, meters
  double tilt = 0.0;

  void validate() const;
  std::size_t element_count() const { return static_cast<std::size_t>(rows) * cols; }

  friend bool operator==(const ArrayConfig&, const ArrayConfig&) = default;
};

// Complex element excitations a(k, l), row-major, |a| <= 1.
class FeedMatrix {
 public:
  FeedMatrix() = default;
  FeedMatrix(int rows, int cols);
  FeedMatrix(int rows, int cols, std::vector<Complex> values);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Complex& operator()(int k, int l) const { return values_[index(k, l)]; }
  void set(int k, int l, Complex a);
  std::span<const Complex> values() const { return values_; }
  double max_amplitude() const;

 private:
  std::size_t index(int k, int l) const { return static_cast<std::size_t>(k) * cols_ + l; }
  void check_amplitudes() const;

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> values_;
};

// Complex array factor sum_{k,l} a(k,l) exp(j 2 pi (k dy v + l dx u) / lambda).
Complex array_factor(const ArrayConfig& cfg, const FeedMatrix& feeds, const UvPoint& p,
                     double wavelength);

// Power gain |array factor|^2.
double transmission_gain(const ArrayConfig& cfg, const FeedMatrix& feeds, const UvPoint& p,
                         double wavelength);

// Batched transmission_gain. Factorizes the phase terms per point so the cost
// is one complex multiply-add per element plus K + L exponentials.
std::vector<double> gain_map(const ArrayConfig& cfg, const FeedMatrix& feeds,
                             std::span<const UvPoint> points, double wavelength);

}  // namespace searchplan
