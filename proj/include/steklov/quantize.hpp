#pragma once

#include <numbers>
#include <vector>

#include "steklov/symbols.hpp"

namespace steklov {

// Spinor samples on the periodic square [0, length)^2, nx * ny points, index = iy * nx + ix.
struct PeriodicGrid {
  int nx = 0;
  int ny = 0;
  double length = 2.0 * std::numbers::pi;
  std::vector<Spinor> values;

  Vec2 point(int ix, int iy) const { return {ix * length / nx, iy * length / ny}; }
  // Angular frequency of DFT index i on an axis with n points.
  double frequency(int i, int n) const { return 2.0 * std::numbers::pi / length * (i <= n / 2 ? i : i - n); }
};

// Op^h(a) on the grid: DFT, multiply by a(y, h k), inverse DFT. Symbols without y dependence use the
// FFT on both sides; y-dependent symbols are frozen at each output point and summed directly.
// Grid sizes must be powers of two.
PeriodicGrid flat_quantize(const SymbolField& symbol, double h, const PeriodicGrid& field);

}  // namespace steklov
