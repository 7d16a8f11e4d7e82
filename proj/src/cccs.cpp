#include "coopsense/cccs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "coopsense/dft.hpp"

namespace coopsense {

namespace {

// Candidates below this fraction of the strongest transform magnitude are
// not considered peaks; rejects transform sidelobes (first sidelobe sits
// near 0.22 of the mainlobe).
constexpr double kCandidateFloor = 0.3;

const std::vector<CVec>& axis_vectors(const SteerVectors& s, Axis axis) {
  return axis == Axis::Range ? s.range : s.doppler;
}

}  // namespace

CorrelationVector cross_correlate(const SteerVectors& active, const SteerVectors& passive,
                                  Axis axis) {
  const auto& a = axis_vectors(active, axis);
  const auto& p = axis_vectors(passive, axis);
  if (a.size() != p.size()) throw std::invalid_argument("cross_correlate: antenna count mismatch");
  CorrelationVector rho;
  rho.axis = axis;
  rho.per_antenna.resize(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].size() != p[k].size()) throw std::invalid_argument("cross_correlate: length mismatch");
    rho.per_antenna[k].resize(a[k].size());
    for (std::size_t i = 0; i < a[k].size(); ++i) {
      rho.per_antenna[k][i] = std::conj(p[k][i]) * a[k][i];
    }
    rho.complex_multiplies += a[k].size();
  }
  return rho;
}

CVec antenna_vector_sum(const CorrelationVector& rho) {
  if (rho.per_antenna.empty()) return {};
  CVec sum(rho.per_antenna[0].size(), Complex{0.0, 0.0});
  for (const CVec& v : rho.per_antenna) {
    for (std::size_t i = 0; i < v.size(); ++i) sum[i] += v[i];
  }
  return sum;
}

Complex cross_term_gain(double delta_omega, int n_antennas) {
  Complex acc{0.0, 0.0};
  for (int k = 0; k < n_antennas; ++k) {
    acc += Complex{std::cos(k * delta_omega), std::sin(k * delta_omega)};
  }
  return acc;
}

double offset_from_bin(double bin, Axis axis, int points, const SceneConfig& config) {
  const double s = signed_bin(bin, points);
  if (axis == Axis::Range) {
    // rho_R component e^{+j 2 pi n df off} peaks at bin K df off.
    return s / (points * config.subcarrier_spacing);
  }
  // rho_V component e^{-j 2 pi m T off} peaks at bin -K T off.
  return -s / (points * config.symbol_period);
}

ExtractionResult extract_offsets(const CorrelationVector& rho, const SceneConfig& config,
                                 int max_targets) {
  if (rho.per_antenna.size() < 2) {
    throw std::invalid_argument("extract_offsets: needs at least two antennas");
  }
  const int len = static_cast<int>(rho.per_antenna[0].size());
  const int points = rho.axis == Axis::Range ? config.idft_points : config.dft_points;
  const int pad_factor = std::max(1, points / len);

  std::vector<CVec> transforms(rho.per_antenna.size());
  for (std::size_t k = 0; k < rho.per_antenna.size(); ++k) {
    transforms[k] = padded_dft(rho.per_antenna[k], points);
  }
  CVec summed(points, Complex{0.0, 0.0});
  for (const CVec& t : transforms) {
    for (int q = 0; q < points; ++q) summed[q] += t[q];
  }

  ExtractionResult result;
  result.peaks.axis = rho.axis;
  result.peaks.origin = PeakOrigin::CccsOffset;

  const int max_candidates = max_targets * max_targets + 4;
  std::vector<SpectrumPeak> candidates =
      find_peaks(transforms[0], max_candidates, pad_factor, kCandidateFloor);
  if (candidates.empty()) {
    result.emptied = true;
    result.notes.push_back("no candidate peaks in the antenna-0 transform");
    return result;
  }

  double scale = 0.0;
  for (const Complex& v : transforms[0]) scale = std::max(scale, std::abs(v.real()));
  const double tol = config.eps_stability * scale;

  std::vector<SpectrumPeak> stable;
  for (const SpectrumPeak& c : candidates) {
    const double ref = transforms[0][c.bin].real();
    bool keep = true;
    for (std::size_t k = 1; k < transforms.size(); ++k) {
      if (std::abs(ref - transforms[k][c.bin].real()) >= tol) {
        keep = false;
        break;
      }
    }
    if (keep) stable.push_back(c);
  }

  if (stable.empty()) {
    result.emptied = true;
    result.notes.push_back("no stable offset peaks");
    return result;
  }
  if (static_cast<int>(stable.size()) > max_targets) {
    result.ambiguous = true;
    result.notes.push_back("more antenna-stable peaks than targets; keeping the strongest");
  }

  std::sort(stable.begin(), stable.end(), [&summed](const SpectrumPeak& a, const SpectrumPeak& b) {
    return std::abs(summed[a.bin]) > std::abs(summed[b.bin]);
  });
  if (static_cast<int>(stable.size()) > max_targets) stable.resize(max_targets);

  for (const SpectrumPeak& s : stable) {
    SpectrumPeak refined = refine_peak(summed, s.bin);
    PeakEntry e;
    e.bin = s.bin;
    e.value = summed[s.bin].real();
    e.refined_offset = offset_from_bin(refined.refined_bin, rho.axis, points, config);
    result.peaks.entries.push_back(e);
  }
  std::sort(result.peaks.entries.begin(), result.peaks.entries.end(),
            [](const PeakEntry& a, const PeakEntry& b) {
              return std::abs(a.value) > std::abs(b.value);
            });
  return result;
}

MatchedSet match(const PeakSet& active, const PeakSet& offsets, const PeakSet& passive,
                 double eps_match, const SceneConfig& config) {
  if (active.axis != offsets.axis || active.axis != passive.axis) {
    throw std::invalid_argument("match: axis mismatch between peak sets");
  }
  const double span = active.axis == Axis::Range ? 1.0 / config.subcarrier_spacing
                                                 : 1.0 / config.symbol_period;
  const double tol = eps_match * span;

  struct Candidate {
    double residual;
    int i, j, k;
  };
  std::vector<Candidate> candidates;
  for (int i = 0; i < static_cast<int>(active.entries.size()); ++i) {
    for (int j = 0; j < static_cast<int>(offsets.entries.size()); ++j) {
      for (int k = 0; k < static_cast<int>(passive.entries.size()); ++k) {
        const double r = std::abs(active.entries[i].refined_offset +
                                  offsets.entries[j].refined_offset -
                                  passive.entries[k].refined_offset);
        if (r <= tol) candidates.push_back({r, i, j, k});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.residual < b.residual; });

  MatchedSet out;
  out.axis = active.axis;
  std::vector<bool> used_i(active.entries.size(), false);
  std::vector<bool> used_j(offsets.entries.size(), false);
  std::vector<bool> used_k(passive.entries.size(), false);
  for (const Candidate& c : candidates) {
    if (used_i[c.i] || used_j[c.j] || used_k[c.k]) continue;
    used_i[c.i] = used_j[c.j] = used_k[c.k] = true;
    MatchTriple t;
    t.active = active.entries[c.i].refined_offset;
    t.offset = offsets.entries[c.j].refined_offset;
    t.passive = passive.entries[c.k].refined_offset;
    t.residual = c.residual;
    t.active_index = c.i;
    t.offset_index = c.j;
    t.passive_index = c.k;
    int sharing = 0;
    for (const Candidate& o : candidates) {
      if (o.i == c.i || o.k == c.k) ++sharing;
    }
    t.ambiguous = sharing > 1;
    out.triples.push_back(t);
  }
  for (int i = 0; i < static_cast<int>(active.entries.size()); ++i) {
    if (!used_i[i]) out.unmatched_active.push_back(i);
  }
  for (int j = 0; j < static_cast<int>(offsets.entries.size()); ++j) {
    if (!used_j[j]) out.unmatched_offset.push_back(j);
  }
  for (int k = 0; k < static_cast<int>(passive.entries.size()); ++k) {
    if (!used_k[k]) out.unmatched_passive.push_back(k);
  }
  return out;
}

CVec compensate(const CVec& passive_vector, double offset, Axis axis,
                const SceneConfig& config) {
  CVec out(passive_vector.size());
  const double step_phase = axis == Axis::Range
                                ? 2.0 * kPi * config.subcarrier_spacing * offset
                                : -2.0 * kPi * config.symbol_period * offset;
  const Complex step{std::cos(step_phase), std::sin(step_phase)};
  Complex ramp{1.0, 0.0};
  for (std::size_t i = 0; i < passive_vector.size(); ++i) {
    out[i] = passive_vector[i] * ramp;
    ramp *= step;
  }
  return out;
}

std::string peaks_csv(const std::vector<PeakSet>& sets, const std::vector<MatchedSet>& matches) {
  auto axis_name = [](Axis a) { return a == Axis::Range ? "range" : "doppler"; };
  auto origin_name = [](PeakOrigin o) {
    switch (o) {
      case PeakOrigin::ActiveDelay: return "P_m";
      case PeakOrigin::PassiveDelay: return "P_b";
      case PeakOrigin::CccsOffset: return "P_g";
    }
    return "?";
  };
  std::ostringstream os;
  os << "axis,origin,bin,value,refined_offset\n";
  char buf[160];
  for (const PeakSet& s : sets) {
    for (const PeakEntry& e : s.entries) {
      std::snprintf(buf, sizeof(buf), "%s,%s,%d,%.12g,%.12g\n", axis_name(s.axis),
                    origin_name(s.origin), e.bin, e.value, e.refined_offset);
      os << buf;
    }
  }
  for (const MatchedSet& m : matches) {
    for (const MatchTriple& t : m.triples) {
      std::snprintf(buf, sizeof(buf), "%s,C_R,%d,%.12g,%.12g\n", axis_name(m.axis),
                    t.active_index, t.residual, t.offset);
      os << buf;
    }
  }
  return os.str();
}

}  // namespace coopsense
