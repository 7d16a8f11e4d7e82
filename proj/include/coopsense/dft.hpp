#pragma once

#include <optional>
#include <vector>

#include "coopsense/types.hpp"

namespace coopsense {

/// Zero-padded forward DFT of length `points`:
///   X(q) = sum_n x[n] e^{-j 2 pi n q / points}.
/// Thread-safe (plans are cached under a lock, execution is lock-free).
CVec padded_dft(const CVec& x, int points);

/// Zero-padded inverse DFT with 1/points normalization:
///   X(i) = (1/points) sum_n x[n] e^{+j 2 pi n i / points}.
CVec padded_idft(const CVec& x, int points);

/// Maps a bin of a length-`points` transform to a signed bin in
/// (-points/2, points/2]; bins above points/2 alias to negative values.
double signed_bin(double bin, int points);

/// Quadratic vertex of the three samples (y0, y1, y2) around a peak;
/// returns the sub-bin offset in [-0.5, 0.5] relative to the middle sample.
double parabolic_offset(double y0, double y1, double y2);

struct SpectrumPeak {
  int bin = 0;
  double magnitude = 0.0;
  double refined_bin = 0.0;  // bin plus the parabolic sub-bin offset
};

/// Strongest local maxima of |spectrum|, strongest first. Peaks closer than
/// `exclusion` bins to an already accepted peak are suppressed (circular
/// distance), as are peaks below rel_floor * max magnitude.
std::vector<SpectrumPeak> find_peaks(const CVec& spectrum, int max_peaks, int exclusion,
                                     double rel_floor = 0.0);

/// Same refinement as find_peaks applied at a known bin.
SpectrumPeak refine_peak(const CVec& spectrum, int bin);

}  // namespace coopsense
