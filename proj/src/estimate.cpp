#include "coopsense/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "coopsense/dft.hpp"

namespace coopsense {

namespace {

// Peaks below this multiple of the median spectrum magnitude do not count
// as targets.
constexpr double kNoiseFloorFactor = 3.0;

double median_magnitude(const CVec& spectrum) {
  std::vector<double> mags(spectrum.size());
  for (std::size_t i = 0; i < spectrum.size(); ++i) mags[i] = std::abs(spectrum[i]);
  auto mid = mags.begin() + mags.size() / 2;
  std::nth_element(mags.begin(), mid, mags.end());
  return *mid;
}

int pad_factor(const Profile& p) {
  const int points = static_cast<int>(p.spectrum.size());
  return std::max(1, points / std::max(1, p.source_length));
}

Estimate to_estimate(const Profile& profile, const SpectrumPeak& peak,
                     const SceneConfig& config, EstimateSource source) {
  const int points = static_cast<int>(profile.spectrum.size());
  Estimate e;
  e.amplitude = peak.magnitude;
  e.source = source;
  if (profile.axis == Axis::Range) {
    const double tau = std::max(0.0, peak.refined_bin) * profile.bin_scale;
    e.raw_delay_s = tau;
    e.range_m = kSpeedOfLight * tau / 2.0;
    e.bistatic_m = kSpeedOfLight * tau;
  } else {
    const double f = signed_bin(peak.refined_bin, points) * profile.bin_scale;
    e.raw_doppler_hz = f;
    const double carrier =
        source == EstimateSource::Passive ? config.carrier_passive : config.carrier_active;
    e.velocity_ms = kSpeedOfLight * f / (2.0 * carrier);
  }
  return e;
}

}  // namespace

std::vector<double> Profile::values() const {
  std::vector<double> v(spectrum.size());
  for (std::size_t i = 0; i < spectrum.size(); ++i) v[i] = std::abs(spectrum[i]);
  return v;
}

Profile range_profile(const CVec& range_vector, int points, const SceneConfig& config) {
  Profile p;
  p.axis = Axis::Range;
  p.spectrum = padded_idft(range_vector, points);
  p.bin_scale = 1.0 / (points * config.subcarrier_spacing);
  p.source_length = static_cast<int>(range_vector.size());
  return p;
}

Profile doppler_profile(const CVec& doppler_vector, int points, const SceneConfig& config) {
  Profile p;
  p.axis = Axis::Doppler;
  p.spectrum = padded_dft(doppler_vector, points);
  p.bin_scale = 1.0 / (points * config.symbol_period);
  p.source_length = static_cast<int>(doppler_vector.size());
  return p;
}

FuseOutcome fuse(const Profile& active, const Profile& passive_compensated, double weight_active,
                 double weight_passive, bool coherent) {
  if (active.spectrum.size() != passive_compensated.spectrum.size() ||
      active.axis != passive_compensated.axis) {
    throw std::invalid_argument("fuse: profile shape mismatch");
  }
  FuseOutcome out;
  out.profile.axis = active.axis;
  out.profile.bin_scale = active.bin_scale;
  out.profile.source_length = active.source_length;
  out.profile.spectrum.resize(active.spectrum.size());
  for (std::size_t i = 0; i < active.spectrum.size(); ++i) {
    if (coherent) {
      out.profile.spectrum[i] = weight_active * active.spectrum[i] +
                                weight_passive * passive_compensated.spectrum[i];
    } else {
      out.profile.spectrum[i] = Complex{weight_active * std::abs(active.spectrum[i]) +
                                            weight_passive * std::abs(passive_compensated.spectrum[i]),
                                        0.0};
    }
  }

  const int n = static_cast<int>(active.spectrum.size());
  int peak_a = 0, peak_p = 0;
  double best_a = -1.0, best_p = -1.0;
  for (int i = 0; i < n; ++i) {
    const double ma = std::abs(active.spectrum[i]);
    if (ma > best_a) { best_a = ma; peak_a = i; }
    const double mp = std::abs(passive_compensated.spectrum[i]);
    if (mp > best_p) { best_p = mp; peak_p = i; }
  }
  int d = std::abs(peak_a - peak_p);
  d = std::min(d, n - d);
  out.aligned = d <= pad_factor(active);
  return out;
}

EstimateSet read_estimates(const Profile& profile, int count, const SceneConfig& config,
                           EstimateSource source) {
  EstimateSet set;
  set.requested = count;
  const double floor = kNoiseFloorFactor * median_magnitude(profile.spectrum);
  std::vector<SpectrumPeak> peaks = find_peaks(profile.spectrum, count, pad_factor(profile));
  for (const SpectrumPeak& p : peaks) {
    if (p.magnitude < floor) continue;
    set.entries.push_back(to_estimate(profile, p, config, source));
  }
  return set;
}

Estimate read_estimate_near(const Profile& profile, double physical, const SceneConfig& config,
                            EstimateSource source) {
  const int points = static_cast<int>(profile.spectrum.size());
  const double bin = physical / profile.bin_scale;  // signed for Doppler; wrapped below
  int center = static_cast<int>(std::llround(bin)) % points;
  if (center < 0) center += points;

  const int radius = 2 * pad_factor(profile);
  int best = center;
  double best_mag = -1.0;
  for (int d = -radius; d <= radius; ++d) {
    const int i = ((center + d) % points + points) % points;
    const double m = std::abs(profile.spectrum[i]);
    if (m > best_mag) {
      best_mag = m;
      best = i;
    }
  }
  return to_estimate(profile, refine_peak(profile.spectrum, best), config, source);
}

std::string profile_csv(const Profile& profile) {
  std::ostringstream os;
  os << (profile.axis == Axis::Range ? "delay_s" : "doppler_hz") << ",magnitude\n";
  const int points = static_cast<int>(profile.spectrum.size());
  char buf[96];
  for (int i = 0; i < points; ++i) {
    const double physical = profile.axis == Axis::Range
                                ? i * profile.bin_scale
                                : signed_bin(i, points) * profile.bin_scale;
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", physical, std::abs(profile.spectrum[i]));
    os << buf;
  }
  return os.str();
}

}  // namespace coopsense
