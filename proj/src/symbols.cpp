#include "steklov/symbols.hpp"

#include <cmath>

#include "steklov/errors.hpp"
#include "steklov/spectral.hpp"

namespace steklov {

SpinorMatrix cauchy_principal_symbol(const ChartMetric& metric, const Vec2& xi) {
  if (xi.squaredNorm() == 0.0) throw DomainError("cauchy_principal_symbol is undefined at xi = 0");
  const Vec2 gx = metric.Ginv * xi;
  const double norm = std::sqrt(gx.dot(xi));
  const Vec3 v(gx.x(), gx.y(), metric.gradChi.dot(gx));
  return 0.5 * alpha_dot(Vec3(v / norm));
}

SpinorMatrix ps_classical_symbol(const Vec3& n, const Vec3& xi) {
  const Vec3 w = xi.cross(n);
  const double len = w.norm();
  if (!(len > 1e-14 * xi.norm())) throw DomainError("ps_classical_symbol needs xi not parallel to n");
  return spin_dot(Vec3(w / len)) * projector(n, Side::minus);
}

SpinorMatrix ps_semiclassical_symbol(const Vec3& n, const Vec3& hxi) {
  const Vec3 w = hxi.cross(n);
  return spin_dot(w) / (std::sqrt(w.squaredNorm() + 1.0) + 1.0) * projector(n, Side::minus);
}

SpinorMatrix halfspace_multiplier(const Vec2& xi, double m, cplx z) {
  if (!(m > 0.0)) throw ArgumentError("halfspace_multiplier needs m > 0");
  const SpinorMatrix shifted = alpha_dot(embed(xi)) - z * identity4();
  return -I_unit * dirac_alpha(3) * shifted * projector(Vec3(0, 0, -1), Side::minus) /
         (std::sqrt(xi.squaredNorm() + m * m) + m);
}

L0Decomposition l0_eigendecomp(const Chart& chart, const Vec2& y, const Vec2& xi, cplx z) {
  L0Decomposition d;
  const Vec2 grad = chart_gradient(chart, y);
  d.stretch = std::sqrt(1.0 + grad.squaredNorm());
  d.normal = Vec3(grad.x(), grad.y(), -1.0) / d.stretch;
  const Vec3 x3 = embed(xi);
  const SpinorMatrix an = alpha_dot(d.normal);
  d.L0 = I_unit * an * (alpha_dot(x3) + dirac_beta()) / d.stretch;
  d.L1 = -I_unit * z * an / d.stretch;

  const Vec3 w = d.normal.cross(x3);
  d.lambda = std::sqrt(w.squaredNorm() + 1.0);
  const cplx nxi = I_unit * d.normal.dot(x3);
  d.rho_plus = (nxi + d.lambda) / d.stretch;
  d.rho_minus = (nxi - d.lambda) / d.stretch;
  const SpinorMatrix sw = spin_dot(w);
  const SpinorMatrix gen = (sw - I_unit * dirac_beta() * an) / d.lambda;
  d.Pi_plus = 0.5 * (identity4() + gen);
  d.Pi_minus = 0.5 * (identity4() - gen);
  d.k_plus = 0.5 * (1.0 + 1.0 / d.lambda);
  d.k_minus = 0.5 * (1.0 - 1.0 / d.lambda);
  d.Theta = sw / (2.0 * d.lambda);
  d.P_plus = projector(d.normal, Side::plus);
  d.P_minus = projector(d.normal, Side::minus);
  return d;
}

SpinorMatrix reconstruct_from_projections(const L0Decomposition& d, const SpinorMatrix& minus_part,
                                          const SpinorMatrix& pi_plus_part) {
  return (identity4() - d.P_plus * d.Pi_plus / d.k_plus) * minus_part + d.P_plus / d.k_plus * pi_plus_part;
}

double symbol_growth(const SymbolField& a, const Vec2& y, const Vec2& unit_xi) {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i <= 10; ++i) {
    const double t = 10.0 * std::pow(1000.0, i / 10.0);
    pts.push_back({t, a.eval(y, t * unit_xi).norm()});
  }
  return rate_fit(pts).slope;
}

}  // namespace steklov
