#pragma once

#include <vector>

#include "coopsense/scenario.hpp"
#include "coopsense/types.hpp"

namespace coopsense {

/// Minimal-total-absolute-error one-to-one assignment of estimates to
/// truths (exact search; target counts stay tiny). Returns, for each truth
/// index, the matched estimate index or -1 when there are fewer estimates.
std::vector<int> associate(const std::vector<double>& estimates,
                           const std::vector<double>& truths);

/// (1/L) sum |est - true|^2 / true^2 over associated pairs. Zero truths are
/// excluded from the average; `excluded` (optional) receives their count.
double nmse(const std::vector<double>& estimates, const std::vector<double>& truths,
            int* excluded = nullptr);

/// sqrt((1/L) sum |omega_est - omega_true|^2) over associated pairs.
double rmse_aoa(const std::vector<double>& estimated_omegas,
                const std::vector<double>& true_omegas);

/// Mean squared complex deviation between a measured antenna-summed direct
/// term and its ideal counterpart.
double mse_direct_term(const CVec& measured, const CVec& ideal);

/// Reference standard deviations (sigma_R, sigma_V) = resolution / sqrt(2 snr).
std::pair<double, double> crlb_reference(const SceneConfig& config, double snr_db);

struct RocPoint {
  double pfa = 0.0;
  double threshold = 0.0;
  double pd = 0.0;
};

/// Empirical Neyman-Pearson curve: thresholds from the H0 statistic
/// quantiles, detection probability from H1 exceedances. Throws when the H0
/// sample is too small to resolve the requested false-alarm rates; the
/// message names the minimum trial count.
std::vector<RocPoint> roc(const std::vector<double>& h0_stats,
                          const std::vector<double>& h1_stats,
                          const std::vector<double>& pfa_grid);

}  // namespace coopsense
