#include "coopsense/dft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace coopsense {

namespace {

// FFTW plan creation is not thread-safe; execution via fftw_execute_dft is.
// Plans are created once per (size, direction) with FFTW_UNALIGNED so they
// can run on arbitrary caller buffers.
class PlanCache {
 public:
  fftw_plan get(int n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    CVec scratch_in(n), scratch_out(n);
    fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(scratch_in.data()),
                                   reinterpret_cast<fftw_complex*>(scratch_out.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

CVec padded_transform(const CVec& x, int points, int sign) {
  if (points < static_cast<int>(x.size())) {
    throw std::invalid_argument("padded transform shorter than its input");
  }
  CVec in(points), out(points);
  std::copy(x.begin(), x.end(), in.begin());
  fftw_plan p = plan_cache().get(points, sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

CVec padded_dft(const CVec& x, int points) {
  return padded_transform(x, points, FFTW_FORWARD);
}

CVec padded_idft(const CVec& x, int points) {
  CVec out = padded_transform(x, points, FFTW_BACKWARD);
  const double scale = 1.0 / points;
  for (Complex& v : out) v *= scale;
  return out;
}

double signed_bin(double bin, int points) {
  return bin > points / 2.0 ? bin - points : bin;
}

double parabolic_offset(double y0, double y1, double y2) {
  const double denom = y0 - 2.0 * y1 + y2;
  if (denom == 0.0) return 0.0;
  double d = 0.5 * (y0 - y2) / denom;
  return std::clamp(d, -0.5, 0.5);
}

SpectrumPeak refine_peak(const CVec& spectrum, int bin) {
  const int n = static_cast<int>(spectrum.size());
  const double y1 = std::abs(spectrum[bin]);
  const double y0 = std::abs(spectrum[(bin - 1 + n) % n]);
  const double y2 = std::abs(spectrum[(bin + 1) % n]);
  SpectrumPeak p;
  p.bin = bin;
  p.magnitude = y1;
  p.refined_bin = bin + parabolic_offset(y0, y1, y2);
  return p;
}

std::vector<SpectrumPeak> find_peaks(const CVec& spectrum, int max_peaks, int exclusion,
                                     double rel_floor) {
  const int n = static_cast<int>(spectrum.size());
  std::vector<double> mag(n);
  double max_mag = 0.0;
  for (int i = 0; i < n; ++i) {
    mag[i] = std::abs(spectrum[i]);
    max_mag = std::max(max_mag, mag[i]);
  }
  const double floor = rel_floor * max_mag;

  std::vector<int> maxima;
  for (int i = 0; i < n; ++i) {
    const double prev = mag[(i - 1 + n) % n];
    const double next = mag[(i + 1) % n];
    if (mag[i] >= prev && mag[i] > next && mag[i] >= floor) maxima.push_back(i);
  }
  std::sort(maxima.begin(), maxima.end(),
            [&mag](int a, int b) { return mag[a] > mag[b]; });

  std::vector<SpectrumPeak> peaks;
  for (int i : maxima) {
    if (static_cast<int>(peaks.size()) >= max_peaks) break;
    bool masked = false;
    for (const SpectrumPeak& p : peaks) {
      int d = std::abs(i - p.bin);
      d = std::min(d, n - d);
      if (d <= exclusion) {
        masked = true;
        break;
      }
    }
    if (!masked) peaks.push_back(refine_peak(spectrum, i));
  }
  return peaks;
}

}  // namespace coopsense
