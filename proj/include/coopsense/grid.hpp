#pragma once

#include <string>

#include "coopsense/types.hpp"

namespace coopsense {

/// Per-antenna matrix of complex modulation symbols, indexed
/// (antenna k, subcarrier n, symbol m) with the symbol axis fastest.
class SymbolGrid {
 public:
  SymbolGrid() = default;
  SymbolGrid(int antennas, int subcarriers, int symbols)
      : antennas_(antennas),
        subcarriers_(subcarriers),
        symbols_(symbols),
        data_(static_cast<std::size_t>(antennas) * subcarriers * symbols) {}

  int antennas() const { return antennas_; }
  int subcarriers() const { return subcarriers_; }
  int symbols() const { return symbols_; }
  std::size_t size() const { return data_.size(); }

  Complex& at(int k, int n, int m) {
    return data_[(static_cast<std::size_t>(k) * subcarriers_ + n) * symbols_ + m];
  }
  const Complex& at(int k, int n, int m) const {
    return data_[(static_cast<std::size_t>(k) * subcarriers_ + n) * symbols_ + m];
  }

  CVec& raw() { return data_; }
  const CVec& raw() const { return data_; }

  bool same_shape(const SymbolGrid& other) const {
    return antennas_ == other.antennas_ && subcarriers_ == other.subcarriers_ &&
           symbols_ == other.symbols_;
  }

  /// Mean per-entry power over the whole grid.
  double mean_power() const;

 private:
  int antennas_ = 0;
  int subcarriers_ = 0;
  int symbols_ = 0;
  CVec data_;
};

/// Binary dump: a short ASCII header terminated by a blank line, then
/// interleaved float64 re/im, little-endian, row-major
/// (antenna, subcarrier, symbol).
void dump_grid(const SymbolGrid& grid, const std::string& path);
SymbolGrid load_grid(const std::string& path);

}  // namespace coopsense
