#include "coopsense/aoa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coopsense/dft.hpp"

namespace coopsense {

namespace {

// Ranging errors can push the law-of-cosines argument slightly past +-1;
// overshoots beyond this are treated as inconsistent inputs.
constexpr double kCosineTolerance = 0.05;

double omega_to_cos(double omega, const SceneConfig& config) {
  return omega * config.wavelength / (2.0 * kPi * config.element_spacing);
}

double theta_from_omega(double omega, const SceneConfig& config) {
  return std::acos(std::clamp(omega_to_cos(omega, config), -1.0, 1.0));
}

}  // namespace

CoarseAoa coarse_aoa(double r1, double r2, double baseline, const SceneConfig& config) {
  if (r1 <= 0.0 || baseline <= 0.0) {
    throw std::domain_error("coarse_aoa: nonpositive range or baseline");
  }
  const double arg = (r1 * r1 + baseline * baseline - r2 * r2) / (2.0 * baseline * r1);
  CoarseAoa out;
  if (std::abs(arg) > 1.0 + kCosineTolerance) {
    throw std::domain_error("coarse_aoa: inconsistent ranging inputs");
  }
  if (std::abs(arg) > 1.0) out.clamped = true;
  out.theta = std::acos(std::clamp(arg, -1.0, 1.0));
  out.omega = 2.0 * kPi * config.element_spacing * std::cos(out.theta) / config.wavelength;
  return out;
}

SpatialSpectrum restricted_spatial_spectrum(const CVec& snapshot, double omega_center,
                                            double half_width, int frft_index) {
  if (frft_index < 1) throw std::invalid_argument("restricted_spatial_spectrum: frft_index < 1");
  const int n_antennas = static_cast<int>(snapshot.size());
  const int K = n_antennas * frft_index;

  const long long lo = static_cast<long long>(
      std::floor(K * (omega_center - half_width) / (2.0 * kPi)));
  const long long hi = static_cast<long long>(
      std::floor(K * (omega_center + half_width) / (2.0 * kPi)));
  long long count = hi - lo + 1;
  long long start = lo;
  if (count >= K) {  // window spans the whole circle
    count = K;
    start = 0;
  }
  if (count < 3) {
    throw std::invalid_argument("restricted_spatial_spectrum: window narrower than three bins");
  }

  SpatialSpectrum sp;
  sp.transform_size = K;
  sp.bins.resize(count);
  sp.values.resize(count);
  for (long long t = 0; t < count; ++t) {
    const int bin = static_cast<int>(((start + t) % K + K) % K);
    sp.bins[t] = bin;
    Complex acc{0.0, 0.0};
    for (int k = 0; k < n_antennas; ++k) {
      const double phase = -2.0 * kPi * k * bin / K;
      acc += snapshot[k] * Complex{std::cos(phase), std::sin(phase)};
    }
    sp.values[t] = acc;
    sp.multiplies += n_antennas;
  }
  return sp;
}

AoaEstimate fine_aoa(const SpatialSpectrum& spectrum, const SceneConfig& config) {
  if (spectrum.values.empty()) throw std::invalid_argument("fine_aoa: empty spectrum");
  const int K = spectrum.transform_size;
  const int count = static_cast<int>(spectrum.values.size());
  const bool full_circle = count == K;

  int best = 0;
  double best_mag = -1.0;
  for (int t = 0; t < count; ++t) {
    const double m = std::abs(spectrum.values[t]);
    if (m > best_mag) {
      best_mag = m;
      best = t;
    }
  }

  AoaEstimate e;
  e.peak_index = spectrum.bins[best];
  e.window_lo = spectrum.bins.front();
  e.window_hi = spectrum.bins.back();
  e.window_edge = !full_circle && (best == 0 || best == count - 1);
  e.multiplies = spectrum.multiplies;

  double refined = static_cast<double>(spectrum.bins[best]);
  if (full_circle || !e.window_edge) {
    const int prev = (best - 1 + count) % count;
    const int next = (best + 1) % count;
    refined += parabolic_offset(std::abs(spectrum.values[prev]), best_mag,
                                std::abs(spectrum.values[next]));
  }

  int bin_lo = static_cast<int>(std::floor(refined));
  bin_lo = (bin_lo % K + K) % K;
  const double lo_signed = bin_lo > K / 2 ? bin_lo - K : bin_lo;
  e.omega_lo = 2.0 * kPi * lo_signed / K;
  e.omega_hi = e.omega_lo + 2.0 * kPi / K;
  e.omega = 0.5 * (e.omega_lo + e.omega_hi);
  // acos is decreasing, so the theta endpoints swap.
  e.theta_lo = theta_from_omega(e.omega_hi, config);
  e.theta_hi = theta_from_omega(e.omega_lo, config);
  e.theta = theta_from_omega(e.omega, config);
  return e;
}

AoaEstimate estimate_aoa(const CVec& snapshot, double r1, double r2, const SceneConfig& config) {
  const CoarseAoa coarse = coarse_aoa(r1, r2, config.baseline, config);
  SpatialSpectrum sp =
      restricted_spatial_spectrum(snapshot, coarse.omega, config.aoa_window, config.frft_index);
  AoaEstimate e = fine_aoa(sp, config);
  e.theta_coarse = coarse.theta;
  e.omega_coarse = coarse.omega;
  e.coarse_clamped = coarse.clamped;
  return e;
}

CVec snapshot_at_cell(const SymbolGrid& divided, int subcarrier, int symbol) {
  CVec snap(divided.antennas());
  for (int k = 0; k < divided.antennas(); ++k) snap[k] = divided.at(k, subcarrier, symbol);
  return snap;
}

CVec gated_snapshot(const SymbolGrid& divided, double delay_s, double doppler_hz,
                    const SceneConfig& config) {
  const int N = divided.subcarriers();
  const int M = divided.symbols();
  CVec ramp_n(N), ramp_m(M);
  const Complex step_n{std::cos(2.0 * kPi * config.subcarrier_spacing * delay_s),
                       std::sin(2.0 * kPi * config.subcarrier_spacing * delay_s)};
  const Complex step_m{std::cos(-2.0 * kPi * config.symbol_period * doppler_hz),
                       std::sin(-2.0 * kPi * config.symbol_period * doppler_hz)};
  ramp_n[0] = {1.0, 0.0};
  for (int n = 1; n < N; ++n) ramp_n[n] = ramp_n[n - 1] * step_n;
  ramp_m[0] = {1.0, 0.0};
  for (int m = 1; m < M; ++m) ramp_m[m] = ramp_m[m - 1] * step_m;

  CVec snap(divided.antennas(), Complex{0.0, 0.0});
  const double scale = 1.0 / (static_cast<double>(N) * M);
  for (int k = 0; k < divided.antennas(); ++k) {
    Complex acc{0.0, 0.0};
    for (int n = 0; n < N; ++n) {
      Complex row{0.0, 0.0};
      for (int m = 0; m < M; ++m) row += divided.at(k, n, m) * ramp_m[m];
      acc += row * ramp_n[n];
    }
    snap[k] = acc * scale;
  }
  return snap;
}

}  // namespace coopsense
