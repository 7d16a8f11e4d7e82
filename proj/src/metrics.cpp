#include "coopsense/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace coopsense {

std::vector<int> associate(const std::vector<double>& estimates,
                           const std::vector<double>& truths) {
  const int n_truth = static_cast<int>(truths.size());
  const int n_est = static_cast<int>(estimates.size());
  std::vector<int> best_assign(n_truth, -1);
  if (n_est == 0 || n_truth == 0) return best_assign;

  // Exhaustive assignment over estimate permutations; exact for the tiny
  // target counts this simulator handles.
  std::vector<int> est_idx(n_est);
  std::iota(est_idx.begin(), est_idx.end(), 0);
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<int> perm = est_idx;
  std::sort(perm.begin(), perm.end());
  do {
    double cost = 0.0;
    for (int t = 0; t < std::min(n_truth, n_est); ++t) {
      cost += std::abs(estimates[perm[t]] - truths[t]);
    }
    if (cost < best_cost) {
      best_cost = cost;
      for (int t = 0; t < n_truth; ++t) best_assign[t] = t < n_est ? perm[t] : -1;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best_assign;
}

double nmse(const std::vector<double>& estimates, const std::vector<double>& truths,
            int* excluded) {
  const std::vector<int> assign = associate(estimates, truths);
  double acc = 0.0;
  int used = 0;
  int skipped = 0;
  for (std::size_t t = 0; t < truths.size(); ++t) {
    if (assign[t] < 0) continue;
    if (truths[t] == 0.0) {
      ++skipped;
      continue;
    }
    const double err = estimates[assign[t]] - truths[t];
    acc += err * err / (truths[t] * truths[t]);
    ++used;
  }
  if (excluded) *excluded = skipped;
  return used > 0 ? acc / used : 0.0;
}

double rmse_aoa(const std::vector<double>& estimated_omegas,
                const std::vector<double>& true_omegas) {
  const std::vector<int> assign = associate(estimated_omegas, true_omegas);
  double acc = 0.0;
  int used = 0;
  for (std::size_t t = 0; t < true_omegas.size(); ++t) {
    if (assign[t] < 0) continue;
    const double err = estimated_omegas[assign[t]] - true_omegas[t];
    acc += err * err;
    ++used;
  }
  return used > 0 ? std::sqrt(acc / used) : 0.0;
}

double mse_direct_term(const CVec& measured, const CVec& ideal) {
  if (measured.size() != ideal.size()) {
    throw std::invalid_argument("mse_direct_term: length mismatch");
  }
  if (measured.empty()) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < measured.size(); ++i) acc += std::norm(measured[i] - ideal[i]);
  return acc / static_cast<double>(measured.size());
}

std::pair<double, double> crlb_reference(const SceneConfig& config, double snr_db) {
  const double snr = db_to_linear(snr_db);
  if (!(snr > 0.0)) throw std::domain_error("crlb_reference: SNR must be positive");
  const auto [dr, dv] = resolutions(config);
  const double denom = std::sqrt(2.0 * snr);
  return {dr / denom, dv / denom};
}

std::vector<RocPoint> roc(const std::vector<double>& h0_stats,
                          const std::vector<double>& h1_stats,
                          const std::vector<double>& pfa_grid) {
  if (h0_stats.empty() || h1_stats.empty()) throw std::invalid_argument("roc: empty ensembles");
  double min_pfa = 1.0;
  for (double p : pfa_grid) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("roc: PFA outside (0, 1]");
    min_pfa = std::min(min_pfa, p);
  }
  const std::size_t needed = static_cast<std::size_t>(std::ceil(1.0 / min_pfa));
  if (h0_stats.size() < needed) {
    throw std::invalid_argument("roc: need at least " + std::to_string(needed) +
                                " noise-only trials for the requested PFA resolution");
  }

  std::vector<double> h0 = h0_stats;
  std::sort(h0.begin(), h0.end(), std::greater<double>());

  std::vector<RocPoint> curve;
  for (double pfa : pfa_grid) {
    // Largest threshold with empirical exceedance rate <= pfa.
    std::size_t idx = static_cast<std::size_t>(std::floor(pfa * h0.size()));
    if (idx >= h0.size()) idx = h0.size() - 1;
    const double thr = h0[idx];
    std::size_t hits = 0;
    for (double s : h1_stats) {
      if (s > thr) ++hits;
    }
    RocPoint pt;
    pt.pfa = pfa;
    pt.threshold = thr;
    pt.pd = static_cast<double>(hits) / h1_stats.size();
    curve.push_back(pt);
  }
  return curve;
}

}  // namespace coopsense
