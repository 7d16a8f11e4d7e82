#pragma once

#include <string>
#include <vector>

#include "coopsense/types.hpp"

namespace coopsense {

/// Statistical model for the per-symbol timing / carrier frequency offsets
/// between the two stations. `constant` freezes each track at its mean.
/// `gaussian` draws independent per-symbol values around the mean; the
/// variance parameters are quoted in squared units (s^2 for timing, Hz^2
/// for frequency), so e.g. cfo_var = 0.2 * subcarrier_spacing means a
/// numeric variance of 24000 Hz^2 at 120 kHz spacing.
struct OffsetModel {
  enum class Kind { Constant, Gaussian };
  Kind kind = Kind::Constant;
  double to_mean_s = 0.0;
  double to_var_s2 = 0.0;
  double cfo_mean_hz = 0.0;
  double cfo_var_hz2 = 0.0;
};

/// Scene numerology and geometry. Station positions are fixed by
/// convention: station 1 (active, receiver of both echoes) at the origin,
/// station 2 at (baseline, 0). Defaults follow the shipped example config.
struct SceneConfig {
  int n_subcarriers = 1024;           // N
  int n_symbols = 256;                // M
  double subcarrier_spacing = 120e3;  // [Hz]
  double symbol_period = 10.38e-6;    // including cyclic prefix [s]
  double carrier_active = 4.0e9;      // [Hz]
  double carrier_passive = 4.2e9;     // [Hz]
  int n_antennas = 8;                 // receive array at station 1
  double wavelength = kSpeedOfLight / 4.0e9;  // [m]
  double element_spacing = kSpeedOfLight / 4.0e9 / 2.0;  // [m], <= lambda/2
  double baseline = 200.0;            // station separation [m]
  int idft_points = 10240;            // range transform length
  int dft_points = 2560;              // Doppler transform length
  int frft_index = 10;                // spatial zero-padding factor
  double aoa_window = kPi / 3.0;      // half-width of the fine search [rad]
  double eps_stability = 0.01;        // antenna-invariance threshold
  double eps_match = 0.01;            // matching tolerance, fraction of the
                                      // unambiguous delay/Doppler span
  double snr_active_db = 30.0;
  double snr_passive_db = 30.0;
  std::uint64_t seed = 1;
  bool aoa_gating = true;             // gate spatial snapshots per target
  OffsetModel offsets;

  double bandwidth() const { return n_subcarriers * subcarrier_spacing; }
};

struct Target {
  Vec2 position;                      // [m]
  Vec2 velocity;                      // [m/s]
  Complex reflectivity_active{1.0, 0.0};
  Complex reflectivity_passive{1.0, 0.0};
};

/// Ground-truth sensing parameters derived from scene geometry.
struct TruthParams {
  double r1 = 0.0;        // station1 -> target range [m]
  double r2 = 0.0;        // target -> station2 range [m]
  double v1 = 0.0;        // radial speed onto station1->target axis [m/s]
  double v2 = 0.0;        // radial speed onto target->station2 axis [m/s]
  double theta = 0.0;     // angle at station 1 off the baseline [rad]
  double omega_steer = 0.0;  // 2*pi*d*cos(theta)/lambda [rad]
  double tau1 = 0.0;      // monostatic delay 2*r1/c [s]
  double tau2 = 0.0;      // bistatic delay (r1+r2)/c [s]
  double doppler_active = 0.0;   // 2*v1*fc1/c [Hz]
  double doppler_passive = 0.0;  // (v1-v2)*fc2/c [Hz]
  Complex alpha_active{1.0, 0.0};
  Complex alpha_passive{1.0, 0.0};

  double delay_offset() const { return tau2 - tau1; }
  double doppler_offset() const { return doppler_passive - doppler_active; }
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Throws std::invalid_argument on degenerate geometry (target coincident
/// with a station).
TruthParams derive_truth(const SceneConfig& config, const Target& target);

/// (range resolution c/2B, velocity resolution c/(2*T*M*fc2)).
std::pair<double, double> resolutions(const SceneConfig& config);

ValidationReport validate_config(const SceneConfig& config);

/// Alternative Doppler-deviation expansion kept for debug output; the
/// pipeline itself always uses TruthParams::doppler_offset().
double doppler_offset_expanded(const SceneConfig& config, const TruthParams& truth);

/// Scene file I/O: JSON, flat keys; full schema in the README.
struct Scene {
  SceneConfig config;
  std::vector<Target> targets;
};

Scene load_scene(const std::string& path);
void save_scene(const Scene& scene, const std::string& path);
Scene parse_scene(const std::string& json_text);

}  // namespace coopsense
