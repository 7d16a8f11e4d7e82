#pragma once

// Independent reference implementations used only to check the library:
// direct-sum transforms, term enumeration for the multi-target correlation,
// and forward scene geometry. Kept deliberately naive.

#include <cmath>
#include <complex>
#include <vector>

#include "coopsense/scenario.hpp"
#include "coopsense/types.hpp"

namespace oracle {

using coopsense::Complex;
using coopsense::CVec;
using coopsense::kPi;

/// O(n * points) direct-sum DFT with zero padding.
inline CVec naive_dft(const CVec& x, int points) {
  CVec out(points);
  for (int q = 0; q < points; ++q) {
    Complex acc{0.0, 0.0};
    for (std::size_t n = 0; n < x.size(); ++n) {
      const double ph = -2.0 * kPi * static_cast<double>(n) * q / points;
      acc += x[n] * Complex{std::cos(ph), std::sin(ph)};
    }
    out[q] = acc;
  }
  return out;
}

inline CVec naive_idft(const CVec& x, int points) {
  CVec out(points);
  for (int i = 0; i < points; ++i) {
    Complex acc{0.0, 0.0};
    for (std::size_t n = 0; n < x.size(); ++n) {
      const double ph = 2.0 * kPi * static_cast<double>(n) * i / points;
      acc += x[n] * Complex{std::cos(ph), std::sin(ph)};
    }
    out[i] = acc / static_cast<double>(points);
  }
  return out;
}

/// One term of the multi-target range correlation: an exponential in
/// tau2[l2] - tau1[l1] + dtau with antenna phase (omega[l1]-omega[l2])k and
/// amplitude a1[l1]*conj(a2[l2]).
struct CorrelationTerm {
  double offset_s = 0.0;     // delay argument of the exponential
  double delta_omega = 0.0;  // antenna-phase slope
  Complex amplitude{0.0, 0.0};
  bool direct = false;       // l1 == l2
};

/// Enumerates all L^2 terms of the correlation between the active and
/// passive range steering vectors.
inline std::vector<CorrelationTerm> enumerate_correlation_terms(
    const std::vector<coopsense::TruthParams>& truths, double dtau_clock) {
  std::vector<CorrelationTerm> terms;
  const int L = static_cast<int>(truths.size());
  for (int l1 = 0; l1 < L; ++l1) {
    for (int l2 = 0; l2 < L; ++l2) {
      CorrelationTerm t;
      t.offset_s = truths[l2].tau2 - truths[l1].tau1 + dtau_clock;
      t.delta_omega = truths[l1].omega_steer - truths[l2].omega_steer;
      t.amplitude = truths[l1].alpha_active * std::conj(truths[l2].alpha_passive);
      t.direct = l1 == l2;
      terms.push_back(t);
    }
  }
  return terms;
}

/// Evaluates the enumerated terms at (n, k): sum of amplitude *
/// e^{j k delta_omega} * e^{j 2 pi n df offset}.
inline Complex correlation_from_terms(const std::vector<CorrelationTerm>& terms, int n, int k,
                                      double subcarrier_spacing) {
  Complex acc{0.0, 0.0};
  for (const CorrelationTerm& t : terms) {
    const double ph = t.delta_omega * k + 2.0 * kPi * n * subcarrier_spacing * t.offset_s;
    acc += t.amplitude * Complex{std::cos(ph), std::sin(ph)};
  }
  return acc;
}

/// Places a target at range r and angle theta (degrees) off the baseline,
/// moving radially away from station 1 at the given speed.
inline coopsense::Target target_at(double range_m, double theta_deg, double speed_ms) {
  const double th = theta_deg * kPi / 180.0;
  coopsense::Target t;
  t.position = {range_m * std::cos(th), range_m * std::sin(th)};
  t.velocity = {speed_ms * std::cos(th), speed_ms * std::sin(th)};
  return t;
}

}  // namespace oracle
