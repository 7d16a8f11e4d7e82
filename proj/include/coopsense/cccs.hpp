#pragma once

#include <string>
#include <vector>

#include "coopsense/extract.hpp"
#include "coopsense/scenario.hpp"
#include "coopsense/types.hpp"

namespace coopsense {

enum class Axis { Range, Doppler };

/// Element-wise conj(passive) * active correlation, per antenna. For a
/// single target this is a pure phase ramp in the delay offset
/// (dtau_geometric + dtau_clock) or the negated Doppler analog.
struct CorrelationVector {
  std::vector<CVec> per_antenna;
  Axis axis = Axis::Range;
  std::size_t complex_multiplies = 0;  // instrumentation for complexity checks
};

CorrelationVector cross_correlate(const SteerVectors& active, const SteerVectors& passive,
                                  Axis axis);

/// Element-wise sum over antennas. Same-target terms gain exactly
/// n_antennas; cross-target terms gain |sum_k e^{jk(O2-O1)}| < n_antennas
/// whenever the angles differ.
CVec antenna_vector_sum(const CorrelationVector& rho);

/// The cross-target gain factor sum_{k=0}^{n-1} e^{j k delta_omega}.
Complex cross_term_gain(double delta_omega, int n_antennas);

enum class PeakOrigin { ActiveDelay, PassiveDelay, CccsOffset };

struct PeakEntry {
  int bin = 0;
  double value = 0.0;        // real part of the DFT output for CCCS sets,
                             // magnitude for profile-derived sets
  double refined_offset = 0.0;  // seconds (range axis) or Hz (Doppler axis)
};

struct PeakSet {
  Axis axis = Axis::Range;
  PeakOrigin origin = PeakOrigin::CccsOffset;
  std::vector<PeakEntry> entries;  // sorted descending by |value|
};

struct ExtractionResult {
  PeakSet peaks;
  bool emptied = false;    // candidate set survived nothing
  bool ambiguous = false;  // more antenna-stable peaks than targets
  std::vector<std::string> notes;
};

/// Offset extraction across antennas: candidate peaks from the antenna-0
/// transform are kept only if their real part is invariant (within
/// eps_stability, relative to the largest real part) over all antennas,
/// which separates same-target terms from cross-target interference.
/// Surviving offsets are refined on the antenna-summed transform.
ExtractionResult extract_offsets(const CorrelationVector& rho, const SceneConfig& config,
                                 int max_targets);

struct MatchTriple {
  double active = 0.0;   // tau1 (s) or fD1 (Hz)
  double offset = 0.0;   // dtau_geo + dtau_clock, or Doppler analog
  double passive = 0.0;  // tau2 + dtau_clock, or Doppler analog
  double residual = 0.0;
  int active_index = -1;
  int offset_index = -1;
  int passive_index = -1;
  bool ambiguous = false;  // other candidates were inside the tolerance
};

struct MatchedSet {
  Axis axis = Axis::Range;
  std::vector<MatchTriple> triples;
  std::vector<int> unmatched_active;
  std::vector<int> unmatched_offset;
  std::vector<int> unmatched_passive;
};

/// Consistency matching |active + offset - passive| <= tolerance over all
/// index combinations, resolved greedily one-to-one by smallest residual.
/// eps_match is a fraction of the unambiguous span (1/df or 1/T).
MatchedSet match(const PeakSet& active, const PeakSet& offsets, const PeakSet& passive,
                 double eps_match, const SceneConfig& config);

/// Multiplies a passive steering vector by the conjugate offset ramp so its
/// transform peak relocates to the active delay/Doppler coordinate.
CVec compensate(const CVec& passive_vector, double offset, Axis axis,
                const SceneConfig& config);

/// Physical value of a (possibly fractional) offset-transform bin.
double offset_from_bin(double bin, Axis axis, int transform_points, const SceneConfig& config);

/// Debug CSV with columns axis,origin,bin,value,refined_offset; matched
/// triples are appended with origin C_R (bin = active index, value =
/// residual, refined_offset = matched offset).
std::string peaks_csv(const std::vector<PeakSet>& sets, const std::vector<MatchedSet>& matches);

}  // namespace coopsense
