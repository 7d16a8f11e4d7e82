#include "coopsense/synth.hpp"

#include <cmath>
#include <stdexcept>

namespace coopsense {

namespace {

const Complex kQpsk[4] = {
    {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)},
    {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)},
    {-1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)},
    {-1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)},
};

Complex cis(double phase) { return {std::cos(phase), std::sin(phase)}; }

void check_alias(double delay, const SceneConfig& config, const char* what) {
  if (delay < 0.0 || delay >= 1.0 / config.subcarrier_spacing) {
    throw std::invalid_argument(std::string(what) +
                                ": delay outside the unambiguous window [0, 1/df)");
  }
}

}  // namespace

SymbolGrid generate_tx(const SceneConfig& config, std::uint64_t stream_id) {
  SymbolGrid grid(config.n_antennas, config.n_subcarriers, config.n_symbols);
  Rng rng(derive_seed(config.seed, 0x7478u /* "tx" */, stream_id));
  for (Complex& v : grid.raw()) v = kQpsk[rng.next() & 3];
  return grid;
}

OffsetTrack sample_offsets(const SceneConfig& config, const OffsetModel& model,
                           std::uint64_t seed) {
  OffsetTrack track;
  track.model = model;
  track.to.resize(config.n_symbols, model.to_mean_s);
  track.cfo.resize(config.n_symbols, model.cfo_mean_hz);
  if (model.kind == OffsetModel::Kind::Gaussian) {
    Rng rng(derive_seed(seed, 0x6f6666u /* "off" */));
    const double to_sd = std::sqrt(model.to_var_s2);
    const double cfo_sd = std::sqrt(model.cfo_var_hz2);
    for (int m = 0; m < config.n_symbols; ++m) {
      track.to[m] += to_sd * rng.normal();
      track.cfo[m] += cfo_sd * rng.normal();
    }
  }
  return track;
}

SymbolGrid apply_active_channel(const SymbolGrid& tx, const std::vector<TruthParams>& truths,
                                const SceneConfig& config) {
  if (tx.antennas() != config.n_antennas || tx.subcarriers() != config.n_subcarriers ||
      tx.symbols() != config.n_symbols) {
    throw std::invalid_argument("apply_active_channel: grid/config dimension mismatch");
  }
  const int N = config.n_subcarriers;
  const int M = config.n_symbols;
  SymbolGrid rx(tx.antennas(), N, M);

  CVec ramp_n(N), ramp_m(M);
  for (const TruthParams& t : truths) {
    check_alias(t.tau1, config, "apply_active_channel");
    const Complex step_n = cis(-2.0 * kPi * config.subcarrier_spacing * t.tau1);
    const Complex step_m = cis(2.0 * kPi * config.symbol_period * t.doppler_active);
    ramp_n[0] = {1.0, 0.0};
    for (int n = 1; n < N; ++n) ramp_n[n] = ramp_n[n - 1] * step_n;
    ramp_m[0] = {1.0, 0.0};
    for (int m = 1; m < M; ++m) ramp_m[m] = ramp_m[m - 1] * step_m;

    for (int k = 0; k < tx.antennas(); ++k) {
      const Complex gain = t.alpha_active * cis(t.omega_steer * k);
      for (int n = 0; n < N; ++n) {
        const Complex gn = gain * ramp_n[n];
        for (int m = 0; m < M; ++m) {
          rx.at(k, n, m) += gn * ramp_m[m];
        }
      }
    }
  }
  for (std::size_t i = 0; i < rx.size(); ++i) rx.raw()[i] *= tx.raw()[i];
  return rx;
}

SymbolGrid apply_passive_channel(const SymbolGrid& tx, const std::vector<TruthParams>& truths,
                                 const OffsetTrack& offsets, const SceneConfig& config) {
  if (tx.antennas() != config.n_antennas || tx.subcarriers() != config.n_subcarriers ||
      tx.symbols() != config.n_symbols) {
    throw std::invalid_argument("apply_passive_channel: grid/config dimension mismatch");
  }
  if (static_cast<int>(offsets.to.size()) != config.n_symbols ||
      static_cast<int>(offsets.cfo.size()) != config.n_symbols) {
    throw std::invalid_argument("apply_passive_channel: offset track length mismatch");
  }
  const int N = config.n_subcarriers;
  const int M = config.n_symbols;
  const double df = config.subcarrier_spacing;
  const double T = config.symbol_period;

  // Target-independent factor for the per-symbol offsets:
  // cfo_phase[m] = e^{j 2 pi m T df(m)}, to_ramp(n,m) = e^{-j 2 pi n df dtau(m)}.
  bool any_to = false;
  for (double v : offsets.to) any_to = any_to || v != 0.0;
  CVec cfo_phase(M);
  for (int m = 0; m < M; ++m) cfo_phase[m] = cis(2.0 * kPi * m * T * offsets.cfo[m]);

  SymbolGrid channel(tx.antennas(), N, M);
  CVec ramp_n(N), ramp_m(M);
  for (const TruthParams& t : truths) {
    for (int m = 0; m < M; ++m) check_alias(t.tau2 + offsets.to[m], config, "apply_passive_channel");
    const Complex step_n = cis(-2.0 * kPi * df * t.tau2);
    const Complex step_m = cis(2.0 * kPi * T * t.doppler_passive);
    ramp_n[0] = {1.0, 0.0};
    for (int n = 1; n < N; ++n) ramp_n[n] = ramp_n[n - 1] * step_n;
    ramp_m[0] = {1.0, 0.0};
    for (int m = 1; m < M; ++m) ramp_m[m] = ramp_m[m - 1] * step_m;

    for (int k = 0; k < tx.antennas(); ++k) {
      const Complex gain = t.alpha_passive * cis(t.omega_steer * k);
      for (int n = 0; n < N; ++n) {
        const Complex gn = gain * ramp_n[n];
        for (int m = 0; m < M; ++m) {
          channel.at(k, n, m) += gn * ramp_m[m];
        }
      }
    }
  }

  SymbolGrid rx(tx.antennas(), N, M);
  for (int k = 0; k < tx.antennas(); ++k) {
    for (int m = 0; m < M; ++m) {
      const Complex to_step = any_to ? cis(-2.0 * kPi * df * offsets.to[m]) : Complex{1.0, 0.0};
      Complex to_ramp{1.0, 0.0};
      for (int n = 0; n < N; ++n) {
        rx.at(k, n, m) = tx.at(k, n, m) * channel.at(k, n, m) * cfo_phase[m] * to_ramp;
        to_ramp *= to_step;
      }
    }
  }
  return rx;
}

SymbolGrid add_awgn(const SymbolGrid& grid, double variance, std::uint64_t seed) {
  SymbolGrid out = grid;
  if (variance <= 0.0) return out;
  Rng rng(derive_seed(seed, 0x6e6f697365u /* "noise" */));
  for (Complex& v : out.raw()) v += rng.complex_normal(variance);
  return out;
}

SymbolGrid add_noise(const SymbolGrid& grid, double snr_db, std::uint64_t seed) {
  if (std::isinf(snr_db) && snr_db > 0.0) return grid;
  const double signal_power = grid.mean_power();
  const double variance = signal_power / db_to_linear(snr_db);
  return add_awgn(grid, variance, seed);
}

}  // namespace coopsense
