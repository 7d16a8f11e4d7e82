#pragma once

#include <string>
#include <vector>

#include "coopsense/cccs.hpp"
#include "coopsense/scenario.hpp"
#include "coopsense/types.hpp"

namespace coopsense {

/// Delay or Doppler profile: the complex zero-padded transform plus its
/// bin-to-physical scale. values() exposes the magnitudes.
struct Profile {
  CVec spectrum;
  Axis axis = Axis::Range;
  double bin_scale = 0.0;   // seconds per bin (range) or Hz per bin (Doppler)
  int source_length = 0;    // pre-padding vector length; sets the resolution

  std::vector<double> values() const;
};

enum class EstimateSource { Active, Passive, Fused };

struct Estimate {
  double raw_delay_s = 0.0;    // range axis only
  double raw_doppler_hz = 0.0;  // Doppler axis only
  double range_m = 0.0;        // monostatic convention c*tau/2
  double bistatic_m = 0.0;     // c*tau (meaningful for the passive path)
  double velocity_ms = 0.0;
  double amplitude = 0.0;
  EstimateSource source = EstimateSource::Active;
};

struct EstimateSet {
  std::vector<Estimate> entries;
  int requested = 0;  // fewer entries than requested means peaks were
                      // missing above the noise floor
};

/// |IDFT| of the range steering vector, zero-padded to `points`; a single
/// target peaks at bin df * points * tau.
Profile range_profile(const CVec& range_vector, int points, const SceneConfig& config);

/// DFT analog for the Doppler axis; peak at bin T * points * fD. Negative
/// Doppler wraps to the top bins and is unwrapped by the readout.
Profile doppler_profile(const CVec& doppler_vector, int points, const SceneConfig& config);

struct FuseOutcome {
  Profile profile;
  bool aligned = true;  // false when the two peaks are farther apart than
                        // one pre-padding resolution bin
};

/// Weighted coherent sum of an active profile and an offset-compensated
/// passive profile. Set coherent=false for the magnitude-sum fallback.
FuseOutcome fuse(const Profile& active, const Profile& passive_compensated,
                 double weight_active = 1.0, double weight_passive = 1.0,
                 bool coherent = true);

/// Top-`count` interpolated peaks converted to physical units. Peaks must
/// clear a floor of 3x the median spectrum magnitude to count.
EstimateSet read_estimates(const Profile& profile, int count, const SceneConfig& config,
                           EstimateSource source);

/// Interpolated peak nearest to a given physical coordinate (used to read a
/// per-target fused profile around the active-sensing peak).
Estimate read_estimate_near(const Profile& profile, double physical,
                            const SceneConfig& config, EstimateSource source);

/// Two-column CSV (physical coordinate, magnitude).
std::string profile_csv(const Profile& profile);

}  // namespace coopsense
