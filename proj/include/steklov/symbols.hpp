#pragma once

#include <functional>
#include <vector>

#include "steklov/clifford.hpp"
#include "steklov/geometry.hpp"

namespace steklov {

// Frequencies xi in R^2 are embedded in R^3 as (xi_1, xi_2, 0) wherever a wedge with a normal appears.
inline Vec3 embed(const Vec2& xi) { return {xi.x(), xi.y(), 0.0}; }

inline double frequency_bracket(const Vec2& xi) { return std::sqrt(1.0 + xi.squaredNorm()); }

// 1/2 alpha.v with v = (G^-1 xi, <grad chi, G^-1 xi>) / <G^-1 xi, xi>^{1/2}.
SpinorMatrix cauchy_principal_symbol(const ChartMetric& metric, const Vec2& xi);

// S.(xi ^ n) / |xi ^ n| P-(n); homogeneous of order 0.
SpinorMatrix ps_classical_symbol(const Vec3& n, const Vec3& xi);

// S.(hxi ^ n) / (sqrt(|hxi ^ n|^2 + 1) + 1) P-(n).
SpinorMatrix ps_semiclassical_symbol(const Vec3& n, const Vec3& hxi);

// Symbol of the half-space interior PS map: -i alpha_3 (alpha.xi - z) P-(-e3) / (sqrt(|xi|^2 + m^2) + m).
SpinorMatrix halfspace_multiplier(const Vec2& xi, double m, cplx z);

// Eigen-structure of the boundary-normal generator L0 in a graph chart.
struct L0Decomposition {
  SpinorMatrix L0;
  SpinorMatrix L1;
  cplx rho_plus;
  cplx rho_minus;
  SpinorMatrix Pi_plus;
  SpinorMatrix Pi_minus;
  double lambda;
  double k_plus;
  double k_minus;
  SpinorMatrix Theta;
  Vec3 normal;        // outward unit normal pulled back to the chart
  double stretch;     // sqrt(1 + |grad chi|^2)
  SpinorMatrix P_plus;
  SpinorMatrix P_minus;
};

L0Decomposition l0_eigendecomp(const Chart& chart, const Vec2& y, const Vec2& xi, cplx z = 0.0);

// A = (I - P+ Pi+ / k+) P- A + (P+ / k+) Pi+ A, the unique matrix with the given P- A and Pi+ A.
SpinorMatrix reconstruct_from_projections(const L0Decomposition& d, const SpinorMatrix& minus_part,
                                          const SpinorMatrix& pi_plus_part);

// Matrix symbol a(y, xi) on a chart, of class S^order.
struct SymbolField {
  std::function<SpinorMatrix(const Vec2&, const Vec2&)> eval;
  int order = 0;
  bool depends_on_y = true;
};

// Least-squares slope of log ||a(y, t xi)|| against log t over t in [10, 1e4]; at most `order` for a valid symbol.
double symbol_growth(const SymbolField& a, const Vec2& y, const Vec2& unit_xi);

}  // namespace steklov
