#pragma once

#include <functional>
#include <vector>

#include "steklov/symbols.hpp"

namespace steklov {

// Term j of the boundary parametrix in a graph chart:
//   A_j(y, xi, tau) = e^{tau rho_-(y, xi) / h} sum_k (tau <xi> / h)^k B_{j,k}(y, xi),  k = 0 .. 2j.
// A_j carries its h^j factor, so for j >= 1
//   h d_tau A_j = L0 A_j + h (L1 A_{j-1} - d_xi L0 . d_y A_{j-1}),   P- A_j(tau = 0) = 0,
// and A_0 solves h d_tau A_0 = L0 A_0 with P- A_0(tau = 0) = P-.
struct ParametrixTerm {
  int j = 0;
  double h = 1.0;
  cplx z = 0.0;
  Chart chart;
  std::vector<SymbolField> B;
  std::function<cplx(const Vec2&, const Vec2&)> rho_minus;

  // All B_{j,k}(y, xi) at once; cheaper than evaluating the fields one by one.
  std::vector<SpinorMatrix> coefficients(const Vec2& y, const Vec2& xi) const;
  SpinorMatrix eval(const Vec2& y, const Vec2& xi, double tau) const;
  // d/dtau of eval, from the stored form.
  SpinorMatrix eval_dtau(const Vec2& y, const Vec2& xi, double tau) const;
};

// j <= 2; larger j throws CapabilityError.
ParametrixTerm parametrix_term(int j, const Chart& chart, double h, cplx z);

inline constexpr int kMaxParametrixOrder = 2;

// d L0 / d xi_i = i alpha.n alpha_i / sqrt(1 + |grad chi|^2).
SpinorMatrix l0_xi_derivative(const L0Decomposition& d, int i);

// Max-abs entry of h d_tau A_0 - L0 A_0 at (y, xi, tau).
double transport_residual(const ParametrixTerm& a0, const Vec2& y, const Vec2& xi, double tau);
// Max-abs entry of h d_tau A_j - L0 A_j - h (L1 A_{j-1} - d_xi L0 . d_y A_{j-1}), d_y by central differences.
double transport_residual(const ParametrixTerm& term, const ParametrixTerm& prev, const Vec2& y, const Vec2& xi,
                          double tau);

}  // namespace steklov
