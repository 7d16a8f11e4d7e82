#include <cmath>

#include "coopsense/dft.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coopsense;

TEST_CASE("padded transforms match the direct-sum reference") {
  Rng rng(11);
  for (int points : {64, 160, 640}) {
    CVec x(48);
    for (Complex& v : x) v = {rng.normal(), rng.normal()};
    const CVec fast = padded_dft(x, points);
    const CVec slow = oracle::naive_dft(x, points);
    const CVec fast_i = padded_idft(x, points);
    const CVec slow_i = oracle::naive_idft(x, points);
    double scale = 0.0;
    for (const Complex& v : slow) scale = std::max(scale, std::abs(v));
    for (int q = 0; q < points; ++q) {
      CHECK(std::abs(fast[q] - slow[q]) < 1e-9 * scale);
      CHECK(std::abs(fast_i[q] - slow_i[q]) < 1e-9);
    }
  }
}

TEST_CASE("parabolic refinement recovers fractional tone positions") {
  const int len = 64;
  const int points = 640;
  for (double true_bin : {123.0, 122.6, 317.25, 50.9}) {
    CVec x(len);
    for (int n = 0; n < len; ++n) {
      const double ph = 2.0 * kPi * n * true_bin / points;
      x[n] = {std::cos(ph), std::sin(ph)};
    }
    const CVec spec = padded_dft(x, points);
    const std::vector<SpectrumPeak> peaks = find_peaks(spec, 1, 1);
    REQUIRE(peaks.size() == 1);
    CHECK(std::abs(peaks[0].bin - true_bin) <= 0.5 + 1e-9);
    CHECK(peaks[0].refined_bin == doctest::Approx(true_bin).epsilon(2e-3));
  }
}

TEST_CASE("peak finding separates tones and masks sidelobes") {
  const int len = 64;
  const int points = 640;
  const int pad = points / len;
  CVec x(len);
  for (int n = 0; n < len; ++n) {
    const double p1 = 2.0 * kPi * n * 120.0 / points;
    const double p2 = 2.0 * kPi * n * 150.0 / points;  // 3 pre-padding bins away
    x[n] = Complex{std::cos(p1), std::sin(p1)} + 0.8 * Complex{std::cos(p2), std::sin(p2)};
  }
  const CVec spec = padded_dft(x, points);
  const std::vector<SpectrumPeak> peaks = find_peaks(spec, 2, pad, 0.3);
  REQUIRE(peaks.size() == 2);
  const double lo = std::min(peaks[0].refined_bin, peaks[1].refined_bin);
  const double hi = std::max(peaks[0].refined_bin, peaks[1].refined_bin);
  CHECK(lo == doctest::Approx(120.0).epsilon(0.02));
  CHECK(hi == doctest::Approx(150.0).epsilon(0.02));
}

TEST_CASE("signed bin mapping") {
  CHECK(signed_bin(10.0, 640) == 10.0);
  CHECK(signed_bin(630.0, 640) == -10.0);
  CHECK(signed_bin(320.0, 640) == 320.0);
  CHECK(signed_bin(321.0, 640) == -319.0);
}
