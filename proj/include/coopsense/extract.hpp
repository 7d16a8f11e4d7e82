#pragma once

#include <vector>

#include "coopsense/grid.hpp"
#include "coopsense/scenario.hpp"

namespace coopsense {

/// Range and Doppler spread steering vectors sliced from a divided grid:
/// range[k] is column ref_symbol (length N), doppler[k] is row
/// ref_subcarrier (length M). Constant factors from the reference indices
/// are absorbed into the per-target amplitudes.
struct SteerVectors {
  std::vector<CVec> range;    // per antenna, length N
  std::vector<CVec> doppler;  // per antenna, length M
  int ref_symbol = 0;
  int ref_subcarrier = 0;
};

/// Element-wise rx / tx. Throws if shapes differ or a tx entry is zero
/// (violated constellation contract).
SymbolGrid divide(const SymbolGrid& rx, const SymbolGrid& tx);

SteerVectors steer_from_grid(const SymbolGrid& divided, int ref_symbol = 0,
                             int ref_subcarrier = 0);

/// Cross-symbol coherent average of the range vectors, valid only when the
/// offsets are constant and Doppler is negligible over the frame; smears
/// otherwise. Doppler vectors are left as slices.
SteerVectors steer_from_grid_averaged(const SymbolGrid& divided, int ref_subcarrier = 0);

}  // namespace coopsense
