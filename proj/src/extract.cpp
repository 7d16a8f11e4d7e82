#include "coopsense/extract.hpp"

#include <stdexcept>

namespace coopsense {

SymbolGrid divide(const SymbolGrid& rx, const SymbolGrid& tx) {
  if (!rx.same_shape(tx)) throw std::invalid_argument("divide: shape mismatch");
  SymbolGrid out = rx;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Complex d = tx.raw()[i];
    if (std::norm(d) == 0.0) throw std::domain_error("divide: zero transmit symbol");
    out.raw()[i] /= d;
  }
  return out;
}

SteerVectors steer_from_grid(const SymbolGrid& divided, int ref_symbol, int ref_subcarrier) {
  if (ref_symbol < 0 || ref_symbol >= divided.symbols() || ref_subcarrier < 0 ||
      ref_subcarrier >= divided.subcarriers()) {
    throw std::out_of_range("steer_from_grid: reference cell outside the grid");
  }
  SteerVectors s;
  s.ref_symbol = ref_symbol;
  s.ref_subcarrier = ref_subcarrier;
  s.range.resize(divided.antennas());
  s.doppler.resize(divided.antennas());
  for (int k = 0; k < divided.antennas(); ++k) {
    s.range[k].resize(divided.subcarriers());
    for (int n = 0; n < divided.subcarriers(); ++n) s.range[k][n] = divided.at(k, n, ref_symbol);
    s.doppler[k].resize(divided.symbols());
    for (int m = 0; m < divided.symbols(); ++m) s.doppler[k][m] = divided.at(k, ref_subcarrier, m);
  }
  return s;
}

SteerVectors steer_from_grid_averaged(const SymbolGrid& divided, int ref_subcarrier) {
  SteerVectors s = steer_from_grid(divided, 0, ref_subcarrier);
  const double inv_m = 1.0 / divided.symbols();
  for (int k = 0; k < divided.antennas(); ++k) {
    for (int n = 0; n < divided.subcarriers(); ++n) {
      Complex acc{0.0, 0.0};
      for (int m = 0; m < divided.symbols(); ++m) acc += divided.at(k, n, m);
      s.range[k][n] = acc * inv_m;
    }
  }
  return s;
}

}  // namespace coopsense
