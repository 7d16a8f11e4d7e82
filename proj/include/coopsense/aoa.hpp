#pragma once

#include <vector>

#include "coopsense/grid.hpp"
#include "coopsense/scenario.hpp"
#include "coopsense/types.hpp"

namespace coopsense {

struct CoarseAoa {
  double theta = 0.0;  // [rad]
  double omega = 0.0;  // spatial frequency 2*pi*d*cos(theta)/lambda
  bool clamped = false;  // cosine argument was pushed back into [-1, 1]
};

/// Law-of-cosines angle at station 1 from the monostatic range r1, the
/// bistatic leg r2 and the baseline. Arguments outside [-1,1] by more than
/// the tolerance are rejected; small overshoots are clamped and flagged.
CoarseAoa coarse_aoa(double r1, double r2, double baseline, const SceneConfig& config);

struct SpatialSpectrum {
  std::vector<Complex> values;  // per window bin
  std::vector<int> bins;        // global bin indices, wrapped mod transform_size
  int transform_size = 0;       // n_antennas * frft_index
  std::size_t multiplies = 0;   // complex multiplies spent, for complexity checks
};

/// Zero-padded spatial DFT of the snapshot, evaluated only over the window
/// [omega_center - half_width, omega_center + half_width]. Every value
/// equals the same-index bin of the full transform exactly.
SpatialSpectrum restricted_spatial_spectrum(const CVec& snapshot, double omega_center,
                                            double half_width, int frft_index);

struct AoaEstimate {
  double theta_coarse = 0.0;
  double omega_coarse = 0.0;
  int peak_index = 0;        // argmax bin (global index)
  int window_lo = 0;
  int window_hi = 0;
  double omega_lo = 0.0;     // fine interval [omega_lo, omega_hi)
  double omega_hi = 0.0;
  double theta_lo = 0.0;     // fine interval [theta_lo, theta_hi)
  double theta_hi = 0.0;
  double omega = 0.0;        // point estimate (interval midpoint)
  double theta = 0.0;
  bool window_edge = false;  // peak on the window edge: coarse stage likely off
  bool coarse_clamped = false;
  std::size_t multiplies = 0;  // spent by the spatial transform
};

/// Peak pick plus interval readout on a window spectrum. The interval is
/// the transform bin containing the interpolated peak, mapped through acos.
AoaEstimate fine_aoa(const SpatialSpectrum& spectrum, const SceneConfig& config);

/// Both stages end to end.
AoaEstimate estimate_aoa(const CVec& snapshot, double r1, double r2, const SceneConfig& config);

/// Array snapshot at one (subcarrier, symbol) cell of a divided grid.
CVec snapshot_at_cell(const SymbolGrid& divided, int subcarrier, int symbol);

/// Per-target snapshot: matched filter of the divided grid at the target's
/// estimated delay/Doppler cell, which suppresses the other targets before
/// the spatial transform.
CVec gated_snapshot(const SymbolGrid& divided, double delay_s, double doppler_hz,
                    const SceneConfig& config);

}  // namespace coopsense
