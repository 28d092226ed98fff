#include "steklov/parametrix.hpp"

#include <cmath>
#include <string>

#include "steklov/errors.hpp"

namespace steklov {
namespace {

using Coefficients = std::vector<SpinorMatrix>;

Coefficients term_coefficients(int j, const Chart& chart, double h, cplx z, const Vec2& y, const Vec2& xi);

// Central-difference d/dy_i of every coefficient of term j and of rho_-.
struct YDerivative {
  Coefficients dB;
  cplx drho;
};

YDerivative y_derivative(int j, const Chart& chart, double h, cplx z, const Vec2& y, const Vec2& xi, int i) {
  Vec2 e = Vec2::Zero();
  e[i] = kChartStep;
  const Coefficients up = term_coefficients(j, chart, h, z, y + e, xi);
  const Coefficients dn = term_coefficients(j, chart, h, z, y - e, xi);
  YDerivative out;
  out.dB.resize(up.size());
  for (std::size_t k = 0; k < up.size(); ++k) out.dB[k] = (up[k] - dn[k]) / (2.0 * kChartStep);
  out.drho = (l0_eigendecomp(chart, y + e, xi, z).rho_minus - l0_eigendecomp(chart, y - e, xi, z).rho_minus) /
             (2.0 * kChartStep);
  return out;
}

double factorial(int k) { return std::tgamma(k + 1.0); }

Coefficients term_coefficients(int j, const Chart& chart, double h, cplx z, const Vec2& y, const Vec2& xi) {
  const L0Decomposition d = l0_eigendecomp(chart, y, xi, z);
  if (j == 0) return {d.Pi_minus * d.P_minus / d.k_plus};

  // forcing h (L1 A_{j-1} - d_xi L0 . d_y A_{j-1}) = e^{tau rho_- / h} sum_k t^k C_k, t = tau <xi> / h
  const Coefficients prev = term_coefficients(j - 1, chart, h, z, y, xi);
  const double br = frequency_bracket(xi);
  const int degree = static_cast<int>(prev.size());  // C_k for k = 0 .. degree, A_j of degree + 1
  Coefficients forcing(degree + 1, SpinorMatrix::Zero());
  for (std::size_t k = 0; k < prev.size(); ++k) forcing[k] += h * d.L1 * prev[k];
  for (int i = 0; i < 2; ++i) {
    const YDerivative dy = y_derivative(j - 1, chart, h, z, y, xi, i);
    const SpinorMatrix dxi = l0_xi_derivative(d, i);
    for (std::size_t k = 0; k < prev.size(); ++k) {
      forcing[k] -= h * dxi * dy.dB[k];
      forcing[k + 1] -= h * dy.drho / br * dxi * prev[k];
    }
  }

  // Solve h d_tau A = L0 A + forcing mode by mode. The Pi_- part integrates to a polynomial of one
  // degree higher; the Pi_+ part is the unique bounded solution, integrated from tau = infinity.
  const cplx q = (d.rho_plus - d.rho_minus) / br;
  Coefficients out(degree + 2, SpinorMatrix::Zero());
  SpinorMatrix b0 = SpinorMatrix::Zero();
  for (int k = 0; k <= degree; ++k) {
    const SpinorMatrix minus = d.Pi_minus * forcing[k];
    const SpinorMatrix plus = d.Pi_plus * forcing[k];
    out[k + 1] += minus / ((k + 1) * br);
    for (int i = 0; i <= k; ++i) {
      out[i] -= factorial(k) / factorial(i) * std::pow(q, -(k - i + 1)) / br * plus;
    }
    b0 -= factorial(k) * std::pow(q, -(k + 1)) / br * plus;
  }
  // tau = 0 value fixed by Pi_+ A(0) = b0 and P- A(0) = 0
  out[0] += d.Pi_minus * d.P_plus * b0 / d.k_plus;
  return out;
}

}  // namespace

SpinorMatrix l0_xi_derivative(const L0Decomposition& d, int i) {
  return I_unit * alpha_dot(d.normal) * dirac_alpha(i + 1) / d.stretch;
}

std::vector<SpinorMatrix> ParametrixTerm::coefficients(const Vec2& y, const Vec2& xi) const {
  return term_coefficients(j, chart, h, z, y, xi);
}

SpinorMatrix ParametrixTerm::eval(const Vec2& y, const Vec2& xi, double tau) const {
  const Coefficients b = coefficients(y, xi);
  const double t = tau * frequency_bracket(xi) / h;
  SpinorMatrix sum = SpinorMatrix::Zero();
  for (std::size_t k = b.size(); k-- > 0;) sum = sum * t + b[k];
  return std::exp(tau * rho_minus(y, xi) / h) * sum;
}

SpinorMatrix ParametrixTerm::eval_dtau(const Vec2& y, const Vec2& xi, double tau) const {
  const Coefficients b = coefficients(y, xi);
  const double rate = frequency_bracket(xi) / h;
  const double t = tau * rate;
  SpinorMatrix sum = SpinorMatrix::Zero(), dsum = SpinorMatrix::Zero();
  for (std::size_t k = b.size(); k-- > 0;) {
    dsum = dsum * t + sum;
    sum = sum * t + b[k];
  }
  const cplx r = rho_minus(y, xi) / h;
  return std::exp(tau * r) * (r * sum + rate * dsum);
}

ParametrixTerm parametrix_term(int j, const Chart& chart, double h, cplx z) {
  if (j < 0 || j > kMaxParametrixOrder) {
    throw CapabilityError("parametrix_term supports 0 <= j <= " + std::to_string(kMaxParametrixOrder) +
                          ", got " + std::to_string(j));
  }
  if (!(h > 0.0 && h <= 1.0)) throw ArgumentError("parametrix_term needs 0 < h <= 1");
  ParametrixTerm t;
  t.j = j;
  t.h = h;
  t.z = z;
  t.chart = chart;
  t.rho_minus = [chart, z](const Vec2& y, const Vec2& xi) { return l0_eigendecomp(chart, y, xi, z).rho_minus; };
  for (int k = 0; k <= 2 * j; ++k) {
    SymbolField f;
    f.order = -j;
    f.eval = [chart, h, z, j, k](const Vec2& y, const Vec2& xi) { return term_coefficients(j, chart, h, z, y, xi)[k]; };
    t.B.push_back(std::move(f));
  }
  return t;
}

double transport_residual(const ParametrixTerm& a0, const Vec2& y, const Vec2& xi, double tau) {
  const L0Decomposition d = l0_eigendecomp(a0.chart, y, xi, a0.z);
  return (a0.h * a0.eval_dtau(y, xi, tau) - d.L0 * a0.eval(y, xi, tau)).cwiseAbs().maxCoeff();
}

double transport_residual(const ParametrixTerm& term, const ParametrixTerm& prev, const Vec2& y, const Vec2& xi,
                          double tau) {
  if (prev.j + 1 != term.j) throw ArgumentError("transport_residual needs consecutive parametrix terms");
  const L0Decomposition d = l0_eigendecomp(term.chart, y, xi, term.z);
  SpinorMatrix r =
      term.h * term.eval_dtau(y, xi, tau) - d.L0 * term.eval(y, xi, tau) - term.h * d.L1 * prev.eval(y, xi, tau);
  for (int i = 0; i < 2; ++i) {
    Vec2 e = Vec2::Zero();
    e[i] = kChartStep;
    const SpinorMatrix dy = (prev.eval(y + e, xi, tau) - prev.eval(y - e, xi, tau)) / (2.0 * kChartStep);
    r += term.h * l0_xi_derivative(d, i) * dy;
  }
  return r.cwiseAbs().maxCoeff();
}

}  // namespace steklov
