#include "coopsense/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "coopsense/dft.hpp"
#include "coopsense/extract.hpp"

namespace coopsense {

namespace {

constexpr std::uint64_t kStreamActiveTx = 1;
constexpr std::uint64_t kStreamPassiveTx = 2;
constexpr std::uint64_t kStreamActiveNoise = 3;
constexpr std::uint64_t kStreamPassiveNoise = 4;

int worker_count() {
  if (const char* env = std::getenv("COOPSENSE_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs fn(i) for i in [0, count) on the worker pool; fn must only touch
/// its own slot of any shared output.
void parallel_for(int count, const std::function<void(int)>& fn) {
  const int workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

bool noiseless(double snr_db) { return std::isinf(snr_db) && snr_db > 0.0; }

/// Reflectivities rescaled so the grid-level per-entry SNR against
/// unit-variance noise equals the configured value exactly.
std::vector<TruthParams> scaled_truths(const Scene& scene) {
  std::vector<TruthParams> truths;
  truths.reserve(scene.targets.size());
  const double l = static_cast<double>(std::max<std::size_t>(1, scene.targets.size()));
  const double s1 = noiseless(scene.config.snr_active_db)
                        ? 1.0
                        : std::sqrt(db_to_linear(scene.config.snr_active_db) / l);
  const double s2 = noiseless(scene.config.snr_passive_db)
                        ? 1.0
                        : std::sqrt(db_to_linear(scene.config.snr_passive_db) / l);
  for (const Target& t : scene.targets) {
    TruthParams tp = derive_truth(scene.config, t);
    if (std::abs(tp.alpha_active) == 0.0 || std::abs(tp.alpha_passive) == 0.0) {
      throw std::invalid_argument("run_trial: zero target reflectivity");
    }
    tp.alpha_active *= s1 / std::abs(tp.alpha_active);
    tp.alpha_passive *= s2 / std::abs(tp.alpha_passive);
    truths.push_back(tp);
  }
  return truths;
}

/// Doppler of the scatterer at a known delay: matched filter along the
/// subcarrier axis of antenna 0, then a Doppler transform of the result.
/// This pairs delay and Doppler per target even when the targets are not
/// separable on the raw Doppler axis.
CVec delay_gated_doppler_vector(const SymbolGrid& divided, double delay_s,
                                const SceneConfig& config) {
  const int N = divided.subcarriers();
  const int M = divided.symbols();
  CVec ramp_n(N);
  const Complex step{std::cos(2.0 * kPi * config.subcarrier_spacing * delay_s),
                     std::sin(2.0 * kPi * config.subcarrier_spacing * delay_s)};
  ramp_n[0] = {1.0, 0.0};
  for (int n = 1; n < N; ++n) ramp_n[n] = ramp_n[n - 1] * step;

  CVec w(M, Complex{0.0, 0.0});
  for (int n = 0; n < N; ++n) {
    const Complex r = ramp_n[n];
    for (int m = 0; m < M; ++m) w[m] += divided.at(0, n, m) * r;
  }
  const double inv_n = 1.0 / N;
  for (Complex& c : w) c *= inv_n;
  return w;
}

double doppler_at_delay(const SymbolGrid& divided, double delay_s, const SceneConfig& config) {
  const CVec w = delay_gated_doppler_vector(divided, delay_s, config);
  const Profile prof = doppler_profile(w, config.dft_points, config);
  const std::vector<SpectrumPeak> peaks = find_peaks(prof.spectrum, 1, 1);
  if (peaks.empty()) return 0.0;
  return signed_bin(peaks[0].refined_bin, config.dft_points) * prof.bin_scale;
}

PeakSet peaks_from_values(const std::vector<double>& values, const std::vector<double>& amps,
                          Axis axis, PeakOrigin origin) {
  PeakSet ps;
  ps.axis = axis;
  ps.origin = origin;
  for (std::size_t i = 0; i < values.size(); ++i) {
    PeakEntry pe;
    pe.value = i < amps.size() ? amps[i] : 0.0;
    pe.refined_offset = values[i];
    ps.entries.push_back(pe);
  }
  return ps;
}

int nearest_truth(const std::vector<TruthParams>& truths, double tau1) {
  int best = 0;
  double best_err = std::numeric_limits<double>::infinity();
  for (int l = 0; l < static_cast<int>(truths.size()); ++l) {
    const double err = std::abs(truths[l].tau1 - tau1);
    if (err < best_err) {
      best_err = err;
      best = l;
    }
  }
  return best;
}

}  // namespace

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::ActiveOnly: return "active";
    case Variant::PassiveOnly: return "passive";
    case Variant::Cooperative: return "cooperative";
    case Variant::PerfectSync: return "perfect-sync";
  }
  return "?";
}

Variant variant_from_name(const std::string& name) {
  if (name == "active") return Variant::ActiveOnly;
  if (name == "passive") return Variant::PassiveOnly;
  if (name == "cooperative") return Variant::Cooperative;
  if (name == "perfect-sync") return Variant::PerfectSync;
  throw std::invalid_argument("unknown variant: " + name);
}

TrialRecord run_trial(const Scene& scene, Variant variant, std::uint64_t seed) {
  return run_trial(scene, std::vector<Variant>{variant}, seed);
}

TrialRecord run_trial(const Scene& scene, const std::vector<Variant>& variants,
                      std::uint64_t seed) {
  SceneConfig cfg = scene.config;
  cfg.seed = seed;
  const int L = static_cast<int>(scene.targets.size());

  TrialRecord rec;
  rec.seed = seed;
  rec.snr_active_db = cfg.snr_active_db;
  rec.snr_passive_db = cfg.snr_passive_db;
  rec.truths = scaled_truths(scene);

  auto wants = [&variants](Variant v) {
    return std::find(variants.begin(), variants.end(), v) != variants.end();
  };
  const bool want_active_chain = wants(Variant::ActiveOnly) || wants(Variant::Cooperative) ||
                                 wants(Variant::PerfectSync);
  const bool want_passive_impaired = wants(Variant::PassiveOnly) || wants(Variant::Cooperative);

  rec.offsets = sample_offsets(cfg, cfg.offsets, seed);
  OffsetTrack zero_track;
  zero_track.to.assign(cfg.n_symbols, 0.0);
  zero_track.cfo.assign(cfg.n_symbols, 0.0);
  zero_track.model.kind = OffsetModel::Kind::Constant;

  const double active_noise_var = noiseless(cfg.snr_active_db) ? 0.0 : 1.0;
  const double passive_noise_var = noiseless(cfg.snr_passive_db) ? 0.0 : 1.0;

  // Shared synthesis.
  SymbolGrid div_active, div_passive, div_perfect;
  SteerVectors steer_active, steer_passive, steer_perfect;
  if (want_active_chain) {
    const SymbolGrid tx1 = generate_tx(cfg, kStreamActiveTx);
    SymbolGrid rx1 = apply_active_channel(tx1, rec.truths, cfg);
    rx1 = add_awgn(rx1, active_noise_var, derive_seed(seed, kStreamActiveNoise));
    div_active = divide(rx1, tx1);
    steer_active = steer_from_grid(div_active);
  }
  if (want_passive_impaired || wants(Variant::PerfectSync)) {
    const SymbolGrid tx2 = generate_tx(cfg, kStreamPassiveTx);
    if (want_passive_impaired) {
      SymbolGrid rx2 = apply_passive_channel(tx2, rec.truths, rec.offsets, cfg);
      rx2 = add_awgn(rx2, passive_noise_var, derive_seed(seed, kStreamPassiveNoise));
      div_passive = divide(rx2, tx2);
      steer_passive = steer_from_grid(div_passive);
    }
    if (wants(Variant::PerfectSync)) {
      SymbolGrid rx2 = apply_passive_channel(tx2, rec.truths, zero_track, cfg);
      rx2 = add_awgn(rx2, passive_noise_var, derive_seed(seed, kStreamPassiveNoise));
      div_perfect = divide(rx2, tx2);
      steer_perfect = steer_from_grid(div_perfect);
    }
  }

  // Active-sensing per-target table: range peaks from the range profile,
  // per-target Doppler from the delay-gated slice.
  struct ActiveTarget {
    double tau = 0.0;
    double fd = 0.0;
    double amplitude = 0.0;
    CVec gated_doppler;
  };
  std::vector<ActiveTarget> act_targets;
  Profile act_range_profile;
  if (want_active_chain) {
    act_range_profile = range_profile(steer_active.range[0], cfg.idft_points, cfg);
    const EstimateSet est = read_estimates(act_range_profile, L, cfg, EstimateSource::Active);
    for (const Estimate& e : est.entries) {
      ActiveTarget t;
      t.tau = e.raw_delay_s;
      t.amplitude = e.amplitude;
      t.gated_doppler = delay_gated_doppler_vector(div_active, t.tau, cfg);
      const Profile prof = doppler_profile(t.gated_doppler, cfg.dft_points, cfg);
      const std::vector<SpectrumPeak> pk = find_peaks(prof.spectrum, 1, 1);
      if (!pk.empty()) t.fd = signed_bin(pk[0].refined_bin, cfg.dft_points) * prof.bin_scale;
      act_targets.push_back(std::move(t));
    }
  }

  for (Variant v : variants) {
    VariantResult res;
    switch (v) {
      case Variant::ActiveOnly: {
        for (const ActiveTarget& t : act_targets) {
          res.range_m.push_back(kSpeedOfLight * t.tau / 2.0);
          res.velocity_ms.push_back(kSpeedOfLight * t.fd / (2.0 * cfg.carrier_active));
        }
        for (const Complex& c : act_range_profile.spectrum) {
          res.detection_stat = std::max(res.detection_stat, std::abs(c));
        }
        for (const ActiveTarget& t : act_targets) {
          const CVec snap = cfg.aoa_gating ? gated_snapshot(div_active, t.tau, t.fd, cfg)
                                           : snapshot_at_cell(div_active, 0, 0);
          SpatialSpectrum sp = restricted_spatial_spectrum(snap, 0.0, kPi, cfg.frft_index);
          res.aoa_multiplies += sp.multiplies;
          res.aoa.push_back(fine_aoa(sp, cfg));
        }
        break;
      }
      case Variant::PassiveOnly: {
        // No offset mitigation: the raw bistatic delay is read with the
        // monostatic conversion, so geometry deviation and timing offset
        // both land in the range estimate.
        const Profile pr = range_profile(steer_passive.range[0], cfg.idft_points, cfg);
        const EstimateSet er = read_estimates(pr, L, cfg, EstimateSource::Passive);
        for (const Estimate& e : er.entries) {
          res.range_m.push_back(e.range_m);
          const double fd = doppler_at_delay(div_passive, e.raw_delay_s, cfg);
          res.velocity_ms.push_back(kSpeedOfLight * fd / (2.0 * cfg.carrier_passive));
        }
        for (const Complex& c : pr.spectrum) {
          res.detection_stat = std::max(res.detection_stat, std::abs(c));
        }
        break;
      }
      case Variant::Cooperative:
      case Variant::PerfectSync: {
        const bool perfect = v == Variant::PerfectSync;
        const SteerVectors& passive = perfect ? steer_perfect : steer_passive;
        const SymbolGrid& div2 = perfect ? div_perfect : div_passive;

        // Passive per-target table.
        const Profile pas_range_profile = range_profile(passive.range[0], cfg.idft_points, cfg);
        const EstimateSet pas_est =
            read_estimates(pas_range_profile, L, cfg, EstimateSource::Passive);
        std::vector<double> pas_delays, pas_amps, pas_dopplers;
        for (const Estimate& e : pas_est.entries) {
          pas_delays.push_back(e.raw_delay_s);
          pas_amps.push_back(e.amplitude);
          pas_dopplers.push_back(doppler_at_delay(div2, e.raw_delay_s, cfg));
        }

        PeakSet range_offsets, doppler_offsets;
        range_offsets.axis = Axis::Range;
        doppler_offsets.axis = Axis::Doppler;
        MatchedSet range_match, doppler_match;
        range_match.axis = Axis::Range;
        doppler_match.axis = Axis::Doppler;

        if (!perfect) {
          const CorrelationVector rho_r = cross_correlate(steer_active, passive, Axis::Range);
          const CorrelationVector rho_d = cross_correlate(steer_active, passive, Axis::Doppler);

          // Direct-term record, normalized to unit reflectivity products.
          rec.direct_term_measured = antenna_vector_sum(rho_r);
          rec.direct_term_ideal.assign(rec.direct_term_measured.size(), Complex{0.0, 0.0});
          double prod_scale = 0.0;
          for (const TruthParams& t : rec.truths) {
            prod_scale += std::abs(t.alpha_active) * std::abs(t.alpha_passive);
          }
          prod_scale = prod_scale > 0.0 ? prod_scale / std::max(1, L) : 1.0;
          const double dtau0 = rec.offsets.to.empty() ? 0.0 : rec.offsets.to[0];
          for (int n = 0; n < static_cast<int>(rec.direct_term_ideal.size()); ++n) {
            Complex acc{0.0, 0.0};
            for (const TruthParams& t : rec.truths) {
              const double ph =
                  2.0 * kPi * n * cfg.subcarrier_spacing * (t.delay_offset() + dtau0);
              acc += t.alpha_active * std::conj(t.alpha_passive) *
                     Complex{std::cos(ph), std::sin(ph)};
            }
            rec.direct_term_ideal[n] = acc;
          }
          const double inv = 1.0 / (cfg.n_antennas * prod_scale);
          for (Complex& c : rec.direct_term_measured) c *= inv;
          for (Complex& c : rec.direct_term_ideal) c *= 1.0 / prod_scale;

          ExtractionResult er = extract_offsets(rho_r, cfg, L);
          ExtractionResult ed = extract_offsets(rho_d, cfg, L);
          res.cccs_emptied = er.emptied || ed.emptied;
          res.cccs_ambiguous = er.ambiguous || ed.ambiguous;
          range_offsets = er.peaks;
          doppler_offsets = ed.peaks;

          std::vector<double> act_delays, act_amps, act_fds;
          for (const ActiveTarget& t : act_targets) {
            act_delays.push_back(t.tau);
            act_amps.push_back(t.amplitude);
            act_fds.push_back(t.fd);
          }
          range_match = match(
              peaks_from_values(act_delays, act_amps, Axis::Range, PeakOrigin::ActiveDelay),
              range_offsets,
              peaks_from_values(pas_delays, pas_amps, Axis::Range, PeakOrigin::PassiveDelay),
              cfg.eps_match, cfg);
          doppler_match = match(
              peaks_from_values(act_fds, act_amps, Axis::Doppler, PeakOrigin::ActiveDelay),
              doppler_offsets,
              peaks_from_values(pas_dopplers, pas_amps, Axis::Doppler, PeakOrigin::PassiveDelay),
              cfg.eps_match, cfg);
          res.matched_range = static_cast<int>(range_match.triples.size());
          res.matched_doppler = static_cast<int>(doppler_match.triples.size());
        }

        // Per-target compensate-then-fuse readout in active coordinates.
        for (int i = 0; i < static_cast<int>(act_targets.size()); ++i) {
          const ActiveTarget& at = act_targets[i];

          double roffset = 0.0;
          double passive_delay = at.tau;
          bool matched = false;
          for (const MatchTriple& t : range_match.triples) {
            if (t.active_index == i) {
              roffset = t.offset;
              passive_delay = t.passive;
              matched = true;
              break;
            }
          }
          if (!matched) {
            if (perfect) {
              roffset = rec.truths[nearest_truth(rec.truths, at.tau)].delay_offset();
            } else if (!range_offsets.entries.empty()) {
              roffset = range_offsets.entries[0].refined_offset;
            }
            passive_delay = at.tau + roffset;
          }

          const CVec comp_r = compensate(passive.range[0], roffset, Axis::Range, cfg);
          const Profile pas_r = range_profile(comp_r, cfg.idft_points, cfg);
          const FuseOutcome fr = fuse(act_range_profile, pas_r);
          res.fusion_misaligned = res.fusion_misaligned || !fr.aligned;
          const Estimate rest =
              read_estimate_near(fr.profile, at.tau, cfg, EstimateSource::Fused);
          res.range_m.push_back(rest.range_m);

          double doffset = 0.0;
          bool dmatched = false;
          for (const MatchTriple& t : doppler_match.triples) {
            if (t.active_index == i) {
              doffset = t.offset;
              dmatched = true;
              break;
            }
          }
          if (!dmatched) {
            if (perfect) {
              doffset = rec.truths[nearest_truth(rec.truths, at.tau)].doppler_offset();
            } else if (!doppler_offsets.entries.empty()) {
              doffset = doppler_offsets.entries[0].refined_offset;
            }
          }

          const CVec gated_pas = delay_gated_doppler_vector(div2, passive_delay, cfg);
          const CVec comp_d = compensate(gated_pas, doffset, Axis::Doppler, cfg);
          const Profile act_d = doppler_profile(at.gated_doppler, cfg.dft_points, cfg);
          const Profile pas_d = doppler_profile(comp_d, cfg.dft_points, cfg);
          const FuseOutcome fd = fuse(act_d, pas_d);
          res.fusion_misaligned = res.fusion_misaligned || !fd.aligned;
          const Estimate dest = read_estimate_near(fd.profile, at.fd, cfg, EstimateSource::Fused);
          res.velocity_ms.push_back(dest.velocity_ms);

          // Two-stage AoA from the fused ranging results.
          const double r1 = rest.range_m;
          const double r2 = kSpeedOfLight * passive_delay - r1;
          const CVec snap = cfg.aoa_gating ? gated_snapshot(div_active, at.tau, at.fd, cfg)
                                           : snapshot_at_cell(div_active, 0, 0);
          try {
            AoaEstimate ae = estimate_aoa(snap, r1, r2, cfg);
            res.aoa_multiplies += ae.multiplies;
            res.aoa.push_back(ae);
          } catch (const std::domain_error&) {
            // Inconsistent ranging inputs; no AoA for this target.
          }
        }

        // Detection statistic: strongest fused range-profile magnitude with
        // the best available offset (single-target framing).
        {
          double offset = 0.0;
          if (perfect && !rec.truths.empty()) offset = rec.truths[0].delay_offset();
          if (!perfect && !range_offsets.entries.empty()) {
            offset = range_offsets.entries[0].refined_offset;
          }
          const CVec comp = compensate(passive.range[0], offset, Axis::Range, cfg);
          const Profile pas = range_profile(comp, cfg.idft_points, cfg);
          const FuseOutcome fo = fuse(act_range_profile, pas);
          for (const Complex& c : fo.profile.spectrum) {
            res.detection_stat = std::max(res.detection_stat, std::abs(c));
          }
        }
        break;
      }
    }
    rec.results[v] = std::move(res);
  }
  return rec;
}

void set_parameter(Scene& scene, const std::string& name, double value) {
  SceneConfig& c = scene.config;
  if (name == "snr_b_db") {
    c.snr_passive_db = value;
  } else if (name == "snr_m_db") {
    c.snr_active_db = value;
  } else if (name == "snr_r_db") {
    c.snr_passive_db = c.snr_active_db + value;
  } else if (name == "to_mean_s") {
    c.offsets.to_mean_s = value;
  } else if (name == "to_var_s2") {
    c.offsets.to_var_s2 = value;
  } else if (name == "cfo_mean_hz") {
    c.offsets.cfo_mean_hz = value;
  } else if (name == "cfo_var_hz2") {
    c.offsets.cfo_var_hz2 = value;
  } else if (name == "aoa_window_rad") {
    c.aoa_window = value;
  } else {
    throw std::invalid_argument("unknown sweep parameter: " + name);
  }
}

namespace {

struct PointAggregate {
  std::vector<double> nmse_range, nmse_vel, rmse_aoa_vals, mse_dr;
  std::vector<double> abs_range_err, abs_vel_err;
  std::size_t aoa_multiplies = 0;
  int aoa_count = 0;
  int quarantined = 0;
};

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / v.size();
}

double median_of(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

double rmse_of(const std::vector<double>& errs) {
  if (errs.empty()) return std::numeric_limits<double>::quiet_NaN();
  double acc = 0.0;
  for (double e : errs) acc += e * e;
  return std::sqrt(acc / errs.size());
}

void append_row(std::ostringstream& os, int point, const std::string& param, double value,
                const std::string& variant, const std::string& metric, double metric_value,
                int trials, std::uint64_t seed_base) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%d,%s,%.12g,%s,%s,%.12g,%d,%llu\n", point, param.c_str(),
                value, variant.c_str(), metric.c_str(), metric_value, trials,
                static_cast<unsigned long long>(seed_base));
  os << buf;
}

}  // namespace

std::string run_sweep(const Scene& base, const SweepSpec& spec, std::uint64_t base_seed) {
  if (spec.trials < 1) throw std::invalid_argument("run_sweep: trials must be >= 1");
  if (spec.variants.empty()) throw std::invalid_argument("run_sweep: no variants");
  if (spec.values.empty()) throw std::invalid_argument("run_sweep: no sweep values");

  std::ostringstream os;
  os << "point,parameter,value,variant,metric,metric_value,trials,seed_base\n";

  for (int point = 0; point < static_cast<int>(spec.values.size()); ++point) {
    Scene scene = base;
    set_parameter(scene, spec.parameter, spec.values[point]);

    std::vector<TrialRecord> records(spec.trials);
    parallel_for(spec.trials, [&](int t) {
      records[t] = run_trial(scene, spec.variants, derive_seed(base_seed, point, t));
    });

    std::vector<double> truth_ranges, truth_vels, truth_omegas;
    for (const TruthParams& t : records[0].truths) {
      truth_ranges.push_back(t.r1);
      truth_vels.push_back(t.v1);
      truth_omegas.push_back(t.omega_steer);
    }

    for (Variant v : spec.variants) {
      PointAggregate agg;
      for (const TrialRecord& rec : records) {
        const VariantResult& res = rec.results.at(v);
        const double nr = nmse(res.range_m, truth_ranges);
        const double nv = nmse(res.velocity_ms, truth_vels);
        bool bad = !std::isfinite(nr) || !std::isfinite(nv);
        if (!res.aoa.empty()) {
          std::vector<double> est_omegas;
          for (const AoaEstimate& a : res.aoa) est_omegas.push_back(a.omega);
          const double ra = rmse_aoa(est_omegas, truth_omegas);
          if (std::isfinite(ra)) {
            agg.rmse_aoa_vals.push_back(ra);
            agg.aoa_multiplies += res.aoa_multiplies;
            agg.aoa_count += static_cast<int>(res.aoa.size());
          } else {
            bad = true;
          }
        }
        if (bad) {
          ++agg.quarantined;
          continue;
        }
        agg.nmse_range.push_back(nr);
        agg.nmse_vel.push_back(nv);
        const std::vector<int> ar = associate(res.range_m, truth_ranges);
        for (std::size_t i = 0; i < truth_ranges.size(); ++i) {
          if (ar[i] >= 0) agg.abs_range_err.push_back(res.range_m[ar[i]] - truth_ranges[i]);
        }
        const std::vector<int> av = associate(res.velocity_ms, truth_vels);
        for (std::size_t i = 0; i < truth_vels.size(); ++i) {
          if (av[i] >= 0) agg.abs_vel_err.push_back(res.velocity_ms[av[i]] - truth_vels[i]);
        }
        if (v == Variant::Cooperative && !rec.direct_term_measured.empty()) {
          agg.mse_dr.push_back(mse_direct_term(rec.direct_term_measured, rec.direct_term_ideal));
        }
      }

      const std::string vn = variant_name(v);
      const std::string& pn = spec.parameter;
      const double pv = spec.values[point];
      append_row(os, point, pn, pv, vn, "nmse_range_mean", mean_of(agg.nmse_range), spec.trials, base_seed);
      append_row(os, point, pn, pv, vn, "nmse_range_median", median_of(agg.nmse_range), spec.trials, base_seed);
      append_row(os, point, pn, pv, vn, "nmse_velocity_mean", mean_of(agg.nmse_vel), spec.trials, base_seed);
      append_row(os, point, pn, pv, vn, "nmse_velocity_median", median_of(agg.nmse_vel), spec.trials, base_seed);
      append_row(os, point, pn, pv, vn, "rmse_range_m", rmse_of(agg.abs_range_err), spec.trials, base_seed);
      append_row(os, point, pn, pv, vn, "rmse_velocity_ms", rmse_of(agg.abs_vel_err), spec.trials, base_seed);
      if (!agg.rmse_aoa_vals.empty()) {
        append_row(os, point, pn, pv, vn, "rmse_aoa_rad", mean_of(agg.rmse_aoa_vals), spec.trials, base_seed);
        append_row(os, point, pn, pv, vn, "aoa_multiplies_per_target",
                   static_cast<double>(agg.aoa_multiplies) / std::max(1, agg.aoa_count),
                   spec.trials, base_seed);
        const double full = static_cast<double>(base.config.n_antennas) *
                            base.config.n_antennas * base.config.frft_index;
        append_row(os, point, pn, pv, vn, "aoa_multiplies_full", full, spec.trials, base_seed);
      }
      if (!agg.mse_dr.empty()) {
        append_row(os, point, pn, pv, vn, "mse_direct_term_mean", mean_of(agg.mse_dr), spec.trials, base_seed);
      }
      if (v == Variant::Cooperative || v == Variant::PerfectSync) {
        const auto [sr, sv] = crlb_reference(scene.config, scene.config.snr_passive_db);
        append_row(os, point, pn, pv, vn, "crlb_sigma_range_m", sr, spec.trials, base_seed);
        append_row(os, point, pn, pv, vn, "crlb_sigma_velocity_ms", sv, spec.trials, base_seed);
      }
      append_row(os, point, pn, pv, vn, "quarantined", agg.quarantined, spec.trials, base_seed);
    }
  }
  return os.str();
}

RocResult run_roc(const Scene& scene, int trials, const std::vector<double>& pfa_grid,
                  std::uint64_t base_seed) {
  if (trials < 1) throw std::invalid_argument("run_roc: trials must be >= 1");
  Scene h0_scene = scene;
  h0_scene.targets.clear();

  const std::vector<Variant> variants{Variant::ActiveOnly, Variant::Cooperative};
  std::vector<double> h0_active(trials), h0_coop(trials), h1_active(trials), h1_coop(trials);

  parallel_for(trials, [&](int t) {
    const TrialRecord r0 = run_trial(h0_scene, variants, derive_seed(base_seed, 0xb0, t));
    h0_active[t] = r0.results.at(Variant::ActiveOnly).detection_stat;
    h0_coop[t] = r0.results.at(Variant::Cooperative).detection_stat;
    const TrialRecord r1 = run_trial(scene, variants, derive_seed(base_seed, 0xb1, t));
    h1_active[t] = r1.results.at(Variant::ActiveOnly).detection_stat;
    h1_coop[t] = r1.results.at(Variant::Cooperative).detection_stat;
  });

  RocResult out;
  out.trials = trials;
  out.active = roc(h0_active, h1_active, pfa_grid);
  out.cooperative = roc(h0_coop, h1_coop, pfa_grid);
  return out;
}

std::string roc_csv(const RocResult& r, const Scene& scene) {
  std::ostringstream os;
  os << "pfa,variant,threshold,pd,trials,snr_m_db,snr_b_db\n";
  char buf[192];
  auto emit = [&](const std::vector<RocPoint>& pts, const char* name) {
    for (const RocPoint& p : pts) {
      std::snprintf(buf, sizeof(buf), "%.12g,%s,%.12g,%.12g,%d,%.12g,%.12g\n", p.pfa, name,
                    p.threshold, p.pd, r.trials, scene.config.snr_active_db,
                    scene.config.snr_passive_db);
      os << buf;
    }
  };
  emit(r.active, "active");
  emit(r.cooperative, "cooperative");
  return os.str();
}

std::pair<Scene, SweepSpec> make_recipe(const Scene& base, const std::string& name, int trials) {
  Scene scene = base;
  SweepSpec spec;
  spec.trials = trials > 0 ? trials : 100;

  if (name == "fig3") {
    // Passive impairment curves vs passive SNR, offsets from the config.
    spec.parameter = "snr_b_db";
    spec.values = {-10.0, -5.0, 0.0, 5.0, 10.0, 20.0};
    spec.variants = {Variant::PassiveOnly, Variant::PerfectSync};
  } else if (name == "fig4") {
    // Power-ratio sweep at fixed active SNR; also carries MSE(D_R).
    scene.config.snr_active_db = 0.0;
    spec.parameter = "snr_r_db";
    spec.values = {-20.0, -10.0, -5.0, 0.0, 5.0, 10.0, 20.0};
    spec.variants = {Variant::ActiveOnly, Variant::PassiveOnly, Variant::Cooperative};
  } else if (name == "fig5") {
    spec.parameter = "snr_b_db";
    spec.values = {-10.0, -5.0, 0.0, 5.0, 10.0, 15.0};
    spec.variants = {Variant::Cooperative, Variant::PerfectSync, Variant::PassiveOnly};
  } else if (name == "fig6a") {
    // Velocity accuracy vs CFO variance (numeric values in Hz^2, quoted as
    // fractions of the subcarrier spacing).
    scene.config.offsets.kind = OffsetModel::Kind::Gaussian;
    spec.parameter = "cfo_var_hz2";
    const double df = scene.config.subcarrier_spacing;
    spec.values = {0.01 * df, 0.05 * df, 0.1 * df, 0.2 * df, 0.3 * df, 0.4 * df};
    spec.variants = {Variant::Cooperative};
  } else if (name == "fig7partial") {
    spec.parameter = "aoa_window_rad";
    spec.values = {kPi / 6.0, kPi / 3.0, kPi / 2.0, kPi};
    spec.variants = {Variant::Cooperative};
    if (trials <= 0) spec.trials = 50;
  } else {
    throw std::invalid_argument("unknown recipe: " + name);
  }
  return {scene, spec};
}

bool is_roc_recipe(const std::string& name) { return name == "fig6b" || name == "roc"; }

}  // namespace coopsense
