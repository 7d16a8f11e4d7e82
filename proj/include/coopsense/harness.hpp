#pragma once

#include <map>
#include <string>
#include <vector>

#include "coopsense/aoa.hpp"
#include "coopsense/cccs.hpp"
#include "coopsense/estimate.hpp"
#include "coopsense/metrics.hpp"
#include "coopsense/scenario.hpp"
#include "coopsense/synth.hpp"

namespace coopsense {

enum class Variant { ActiveOnly, PassiveOnly, Cooperative, PerfectSync };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

struct VariantResult {
  std::vector<double> range_m;       // per detected target, unordered
  std::vector<double> velocity_ms;
  std::vector<AoaEstimate> aoa;      // cooperative / perfect-sync / active paths
  double detection_stat = 0.0;       // peak profile magnitude
  int matched_range = 0;             // matched triples (cooperative only)
  int matched_doppler = 0;
  bool cccs_emptied = false;
  bool cccs_ambiguous = false;
  bool fusion_misaligned = false;
  std::size_t aoa_multiplies = 0;
};

struct TrialRecord {
  std::vector<TruthParams> truths;
  double snr_active_db = 0.0;
  double snr_passive_db = 0.0;
  std::uint64_t seed = 0;
  OffsetTrack offsets;
  std::map<Variant, VariantResult> results;
  // Antenna-summed range correlation vs its ideal, both normalized by
  // n_antennas * mean reflectivity product (cooperative runs only).
  CVec direct_term_measured;
  CVec direct_term_ideal;
};

/// Full pipeline for one Monte Carlo trial. Synthesis is shared across the
/// requested variants; perfect-sync uses a zero offset track and true
/// per-target deviations instead of the estimated ones.
TrialRecord run_trial(const Scene& scene, const std::vector<Variant>& variants,
                      std::uint64_t seed);
TrialRecord run_trial(const Scene& scene, Variant variant, std::uint64_t seed);

struct SweepSpec {
  std::string parameter;          // e.g. "snr_b_db"; see set_parameter()
  std::vector<double> values;
  int trials = 100;
  std::vector<Variant> variants{Variant::Cooperative};
};

/// Applies a named sweep parameter to a scene. Throws on unknown names.
/// Known: snr_b_db, snr_m_db, snr_r_db (keeps snr_m, sets snr_b),
/// to_mean_s, to_var_s2, cfo_mean_hz, cfo_var_hz2, aoa_window_rad.
void set_parameter(Scene& scene, const std::string& name, double value);

/// Runs the sweep and returns the metrics CSV: one row per
/// (sweep point, variant, metric). Deterministic for a fixed
/// (scene, spec, base_seed); trials run on a worker pool sized from the
/// COOPSENSE_WORKERS environment variable when set.
std::string run_sweep(const Scene& scene, const SweepSpec& spec, std::uint64_t base_seed);

struct RocResult {
  std::vector<RocPoint> active;
  std::vector<RocPoint> cooperative;
  int trials = 0;
};

/// Neyman-Pearson detection run: `trials` noise-only and `trials` target
/// ensembles through the active and cooperative detectors.
RocResult run_roc(const Scene& scene, int trials, const std::vector<double>& pfa_grid,
                  std::uint64_t base_seed);
std::string roc_csv(const RocResult& roc, const Scene& scene);

/// Named figure-reproduction recipes; returns the adjusted scene plus sweep.
/// Known names: fig3, fig4, fig5, fig6a, fig7partial ("fig6b" runs through
/// run_roc instead). trials <= 0 keeps each recipe's default.
std::pair<Scene, SweepSpec> make_recipe(const Scene& base, const std::string& name, int trials);

bool is_roc_recipe(const std::string& name);

}  // namespace coopsense
