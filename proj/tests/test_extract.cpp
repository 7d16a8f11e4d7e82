#include <cmath>

#include "coopsense/dft.hpp"
#include "coopsense/extract.hpp"
#include "coopsense/synth.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coopsense;

namespace {

SceneConfig small_config() {
  SceneConfig cfg;
  cfg.n_subcarriers = 64;
  cfg.n_symbols = 16;
  cfg.n_antennas = 2;
  cfg.idft_points = 640;
  cfg.dft_points = 160;
  return cfg;
}

TruthParams active_truth(double tau, double fd, Complex a, double omega) {
  TruthParams t;
  t.tau1 = tau;
  t.doppler_active = fd;
  t.alpha_active = a;
  t.omega_steer = omega;
  return t;
}

}  // namespace

TEST_CASE("division is exactly invertible") {
  const SceneConfig cfg = small_config();
  const SymbolGrid tx = generate_tx(cfg, 1);
  Rng rng(5);
  SymbolGrid channel(cfg.n_antennas, cfg.n_subcarriers, cfg.n_symbols);
  for (Complex& v : channel.raw()) v = {rng.normal(), rng.normal()};
  SymbolGrid rx = tx;
  for (std::size_t i = 0; i < rx.size(); ++i) rx.raw()[i] *= channel.raw()[i];
  const SymbolGrid div = divide(rx, tx);
  for (std::size_t i = 0; i < div.size(); ++i) {
    CHECK(std::abs(div.raw()[i] - channel.raw()[i]) < 1e-12);
  }

  CHECK(divide(tx, tx).raw()[17] == Complex{1.0, 0.0});
}

TEST_CASE("division rejects a zero transmit symbol") {
  const SceneConfig cfg = small_config();
  SymbolGrid tx = generate_tx(cfg, 1);
  const SymbolGrid rx = tx;
  tx.raw()[3] = {0.0, 0.0};
  CHECK_THROWS_AS(divide(rx, tx), std::domain_error);
}

TEST_CASE("division preserves noise power (unit-modulus denominator)") {
  const SceneConfig cfg = small_config();
  const SymbolGrid tx = generate_tx(cfg, 1);
  const SymbolGrid noisy = add_awgn(tx, 0.5, 99);
  SymbolGrid noise_only = noisy;
  for (std::size_t i = 0; i < noise_only.size(); ++i) noise_only.raw()[i] -= tx.raw()[i];
  const SymbolGrid div = divide(noisy, tx);
  double before = 0.0, after = 0.0;
  for (std::size_t i = 0; i < div.size(); ++i) {
    before += std::norm(noise_only.raw()[i]);
    after += std::norm(div.raw()[i] - Complex{1.0, 0.0});
  }
  CHECK(after == doctest::Approx(before).epsilon(1e-9));
}

TEST_CASE("steer vectors carry the single-target phases") {
  const SceneConfig cfg = small_config();
  const double tau = 300e-9;
  const double fd = 450.0;
  const Complex a{0.9, 0.2};
  const double omega = 0.7;
  const SymbolGrid tx = generate_tx(cfg, 1);
  const SymbolGrid rx = apply_active_channel(tx, {active_truth(tau, fd, a, omega)}, cfg);
  const SteerVectors s = steer_from_grid(divide(rx, tx));

  for (int k = 0; k < cfg.n_antennas; ++k) {
    const Complex gain = a * Complex{std::cos(omega * k), std::sin(omega * k)};
    for (int n = 0; n < cfg.n_subcarriers; n += 9) {
      const double ph = -2.0 * kPi * n * cfg.subcarrier_spacing * tau;
      CHECK(std::abs(s.range[k][n] - gain * Complex{std::cos(ph), std::sin(ph)}) < 1e-10);
    }
    for (int m = 0; m < cfg.n_symbols; m += 5) {
      const double ph = 2.0 * kPi * m * cfg.symbol_period * fd;
      CHECK(std::abs(s.doppler[k][m] - gain * Complex{std::cos(ph), std::sin(ph)}) < 1e-10);
    }
    // Noiseless single target: constant magnitude everywhere.
    for (int n = 0; n < cfg.n_subcarriers; ++n) {
      CHECK(std::abs(s.range[k][n]) == doctest::Approx(std::abs(a)).epsilon(1e-9));
    }
  }
}

TEST_CASE("zero-delay zero-Doppler target gives constant vectors") {
  const SceneConfig cfg = small_config();
  const SymbolGrid tx = generate_tx(cfg, 1);
  const SymbolGrid rx = apply_active_channel(tx, {active_truth(0.0, 0.0, {1, 0}, 0.0)}, cfg);
  const SteerVectors s = steer_from_grid(divide(rx, tx));
  for (const Complex& v : s.range[0]) CHECK(std::abs(v - Complex{1.0, 0.0}) < 1e-12);
  for (const Complex& v : s.doppler[0]) CHECK(std::abs(v - Complex{1.0, 0.0}) < 1e-12);
}

TEST_CASE("reference symbol choice shifts phase but not the transform peak") {
  const SceneConfig cfg = small_config();
  const double tau = 300e-9;
  const double fd = 450.0;
  const SymbolGrid tx = generate_tx(cfg, 1);
  const SymbolGrid div =
      divide(apply_active_channel(tx, {active_truth(tau, fd, {1, 0}, 0.0)}, cfg), tx);
  const SteerVectors s0 = steer_from_grid(div, 0, 0);
  const SteerVectors s1 = steer_from_grid(div, 1, 0);

  // Constant complex factor between the two slices.
  const Complex factor = s1.range[0][0] / s0.range[0][0];
  for (int n = 0; n < cfg.n_subcarriers; n += 7) {
    CHECK(std::abs(s1.range[0][n] - factor * s0.range[0][n]) < 1e-10);
  }

  const CVec spec0 = padded_dft(s0.range[0], cfg.idft_points);
  const CVec spec1 = padded_dft(s1.range[0], cfg.idft_points);
  CHECK(find_peaks(spec0, 1, 1)[0].bin == find_peaks(spec1, 1, 1)[0].bin);
}

TEST_CASE("coherent averaging matches the slice for a static scene") {
  const SceneConfig cfg = small_config();
  const SymbolGrid tx = generate_tx(cfg, 1);
  const SymbolGrid div =
      divide(apply_active_channel(tx, {active_truth(300e-9, 0.0, {1, 0}, 0.3)}, cfg), tx);
  const SteerVectors sliced = steer_from_grid(div);
  const SteerVectors averaged = steer_from_grid_averaged(div);
  for (int n = 0; n < cfg.n_subcarriers; ++n) {
    CHECK(std::abs(averaged.range[0][n] - sliced.range[0][n]) < 1e-10);
  }
}
