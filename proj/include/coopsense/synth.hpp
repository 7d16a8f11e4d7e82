#pragma once

#include <vector>

#include "coopsense/grid.hpp"
#include "coopsense/scenario.hpp"
#include "coopsense/types.hpp"

namespace coopsense {

/// Per-symbol timing / carrier frequency offset realizations.
struct OffsetTrack {
  std::vector<double> to;   // delta_tau(m) [s], length M
  std::vector<double> cfo;  // delta_f(m) [Hz], length M
  OffsetModel model;
};

/// QPSK payload grid, i.i.d. uniform over {(+-1 +- j)/sqrt(2)},
/// reproducible from (config.seed, stream_id).
SymbolGrid generate_tx(const SceneConfig& config, std::uint64_t stream_id);

OffsetTrack sample_offsets(const SceneConfig& config, const OffsetModel& model,
                           std::uint64_t seed);

/// Monostatic channel: rx(k,n,m) = tx(k,n,m) * sum_l alpha1_l e^{j Omega_l k}
/// e^{-j 2 pi n df tau1_l} e^{j 2 pi m T fD1_l}. Noiseless. Throws if any
/// delay exceeds the unambiguous window 1/df.
SymbolGrid apply_active_channel(const SymbolGrid& tx, const std::vector<TruthParams>& truths,
                                const SceneConfig& config);

/// Bistatic channel with the per-symbol offsets applied inside the phase
/// terms: delays tau2_l + dtau(m), symbol-axis frequencies fD2_l + df(m).
SymbolGrid apply_passive_channel(const SymbolGrid& tx, const std::vector<TruthParams>& truths,
                                 const OffsetTrack& offsets, const SceneConfig& config);

/// Adds circular complex Gaussian noise scaled so the per-entry SNR equals
/// snr_db, with signal power measured from the grid itself. An infinite
/// snr_db leaves the grid untouched.
SymbolGrid add_noise(const SymbolGrid& grid, double snr_db, std::uint64_t seed);

/// Adds circular complex Gaussian noise of fixed per-entry variance.
SymbolGrid add_awgn(const SymbolGrid& grid, double variance, std::uint64_t seed);

}  // namespace coopsense
