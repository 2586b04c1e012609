#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "searchplan/array.hpp"
#include "searchplan/error.hpp"
#include "support.hpp"

using namespace searchplan;
using testsupport::close_rel;
using testsupport::scalar_gain;

namespace {

FeedMatrix uniform_feeds(int K, int L, Complex a = 1.0) {
  return FeedMatrix(K, L, std::vector<Complex>(static_cast<std::size_t>(K) * L, a));
}

FeedMatrix random_feeds(std::mt19937_64& rng, int K, int L, bool real = false) {
  std::uniform_real_distribution<double> amp(0.0, 1.0), ph(-kPi, kPi);
  std::vector<Complex> v(static_cast<std::size_t>(K) * L);
  for (auto& a : v) a = real ? Complex(2.0 * amp(rng) - 1.0, 0.0) : std::polar(amp(rng), ph(rng));
  return FeedMatrix(K, L, std::move(v));
}

}  // namespace

TEST_CASE("uniform feeds peak at (KL)^2 on boresight") {
  for (auto [K, L] : {std::pair{1, 1}, std::pair{4, 4}, std::pair{3, 7}, std::pair{20, 20}}) {
    const ArrayConfig cfg{K, L, 0.05, 0.05, 0.0};
    const double g = transmission_gain(cfg, uniform_feeds(K, L), {0.0, 0.0}, 0.1);
    CHECK(g == doctest::Approx(static_cast<double>(K * L) * (K * L)).epsilon(1e-12));
  }
}

TEST_CASE("zero feeds give zero gain") {
  const ArrayConfig cfg{5, 6, 0.05, 0.04, 0.1};
  const FeedMatrix f(5, 6);
  for (double u : {-0.9, 0.0, 0.3}) CHECK(transmission_gain(cfg, f, {u, 0.2}, 0.1) == 0.0);
}

TEST_CASE("2x2 half-wavelength array at u = 0.5") {
  const ArrayConfig cfg{2, 2, 0.05, 0.05, 0.0};
  const FeedMatrix f = uniform_feeds(2, 2);
  const UvPoint p{0.5, 0.0};
  // Each row sums 1 + j, so the factor is 2 + 2j.
  CHECK(transmission_gain(cfg, f, p, 0.1) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(close_rel(transmission_gain(cfg, f, p, 0.1), scalar_gain(cfg, f, p, 0.1), 1e-13));
}

TEST_CASE("transmission_gain matches the scalar oracle on random points") {
  std::mt19937_64 rng(3);
  const ArrayConfig cfg{8, 8, 0.05, 0.05, 0.2};
  const FeedMatrix f = random_feeds(rng, 8, 8);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const UvPoint p{c(rng), c(rng)};
    const double expected = scalar_gain(cfg, f, p, 0.1);
    CHECK(close_rel(transmission_gain(cfg, f, p, 0.1), expected, 1e-12));
  }
}

TEST_CASE("gain_map equals pointwise transmission_gain") {
  std::mt19937_64 rng(5);
  const ArrayConfig cfg{4, 4, 0.05, 0.05, 0.0};
  const FeedMatrix uni = uniform_feeds(4, 4);

  CHECK(gain_map(cfg, uni, {}, 0.1).empty());

  const std::vector<UvPoint> one{{0.2, -0.1}};
  const auto single = gain_map(cfg, uni, one, 0.1);
  REQUIRE(single.size() == 1);
  CHECK(close_rel(single[0], transmission_gain(cfg, uni, one[0], 0.1), 1e-12));

  std::vector<UvPoint> pts;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) pts.push_back({-0.75 + 0.5 * i, -0.75 + 0.5 * j});
  }
  const auto map = gain_map(cfg, uni, pts, 0.1);
  REQUIRE(map.size() == 16);
  for (std::size_t i = 0; i < 16; ++i) CHECK(close_rel(map[i], scalar_gain(cfg, uni, pts[i], 0.1), 1e-9));

  const ArrayConfig big{9, 13, 0.045, 0.06, 0.3};
  const FeedMatrix f = random_feeds(rng, 9, 13);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::vector<UvPoint> rnd(500);
  for (auto& p : rnd) p = {c(rng), c(rng)};
  const auto g = gain_map(big, f, rnd, 0.1);
  for (std::size_t i = 0; i < rnd.size(); ++i) {
    CHECK(close_rel(g[i], transmission_gain(big, f, rnd[i], 0.1), 1e-9));
  }
}

TEST_CASE("array factor is linear in the feeds") {
  std::mt19937_64 rng(9);
  const ArrayConfig cfg{6, 5, 0.05, 0.05, 0.0};
  const FeedMatrix a = random_feeds(rng, 6, 5), b = random_feeds(rng, 6, 5);
  std::vector<Complex> sum(30);
  for (int k = 0; k < 6; ++k) {
    for (int l = 0; l < 5; ++l) sum[static_cast<std::size_t>(k) * 5 + l] = 0.5 * (a(k, l) + b(k, l));
  }
  const FeedMatrix s(6, 5, sum);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const UvPoint p{c(rng), c(rng)};
    const Complex lhs = array_factor(cfg, s, p, 0.1);
    const Complex rhs = 0.5 * (array_factor(cfg, a, p, 0.1) + array_factor(cfg, b, p, 0.1));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("phase-shift steering moves the peak") {
  const int K = 10, L = 10;
  const double lambda = 0.1;
  const ArrayConfig cfg{K, L, 0.05, 0.05, 0.0};
  for (auto [u0, v0] : {std::pair{0.3, -0.2}, std::pair{-0.55, 0.1}, std::pair{0.0, 0.6}}) {
    std::vector<Complex> v(static_cast<std::size_t>(K) * L);
    for (int k = 0; k < K; ++k) {
      for (int l = 0; l < L; ++l) {
        v[static_cast<std::size_t>(k) * L + l] =
            std::polar(1.0, -2.0 * kPi * (k * cfg.dy * v0 + l * cfg.dx * u0) / lambda);
      }
    }
    const FeedMatrix f(K, L, v);
    const double step = 0.01;
    std::vector<UvPoint> pts;
    for (int i = -100; i <= 100; ++i) {
      for (int j = -100; j <= 100; ++j) pts.push_back({i * step, j * step});
    }
    const auto g = gain_map(cfg, f, pts, lambda);
    const auto best = std::max_element(g.begin(), g.end()) - g.begin();
    CHECK(std::abs(pts[best].u - u0) <= step);
    CHECK(std::abs(pts[best].v - v0) <= step);
    CHECK(g[best] == doctest::Approx(static_cast<double>(K * L) * (K * L)).epsilon(1e-9));
  }
}

TEST_CASE("real feeds give a point-symmetric pattern") {
  std::mt19937_64 rng(13);
  const ArrayConfig cfg{7, 6, 0.05, 0.05, 0.0};
  const FeedMatrix f = random_feeds(rng, 7, 6, true);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const UvPoint p{c(rng), c(rng)};
    CHECK(close_rel(transmission_gain(cfg, f, p, 0.1), transmission_gain(cfg, f, {-p.u, -p.v}, 0.1),
                    1e-10));
  }
}

TEST_CASE("configuration errors") {
  const ArrayConfig cfg{4, 4, 0.05, 0.05, 0.0};
  CHECK_THROWS_AS(transmission_gain(cfg, FeedMatrix(4, 3), {0, 0}, 0.1), ConfigError);
  CHECK_THROWS_AS(gain_map(cfg, FeedMatrix(3, 4), std::vector<UvPoint>{{0, 0}}, 0.1), ConfigError);
  CHECK_THROWS_AS(transmission_gain(cfg, FeedMatrix(4, 4), {0, 0}, 0.0), ConfigError);
  CHECK_THROWS_AS(FeedMatrix(2, 2, std::vector<Complex>(4, Complex(1.1, 0.0))), ConfigError);
  FeedMatrix f(2, 2);
  CHECK_THROWS_AS(f.set(0, 0, Complex(0.0, 1.5)), ConfigError);
  f.set(1, 1, std::polar(1.0, 0.7));
  CHECK(f.max_amplitude() == doctest::Approx(1.0));
  CHECK_THROWS_AS((ArrayConfig{0, 4, 0.05, 0.05, 0.0}.validate()), ConfigError);
  CHECK_THROWS_AS((ArrayConfig{4, 4, -0.05, 0.05, 0.0}.validate()), ConfigError);
}
