#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "steklov/errors.hpp"
#include "steklov/spectral.hpp"

// Radial reduction with psi = (g(r) Omega_kappa, i f(r) Omega_-kappa):
//   g' + (1 + kappa) g / r = (e + mass) f,   f' + (1 - kappa) f / r = -(e - mass) g.
// Regular interior solutions use j_l (|e| > m) or i_l (|e| < m) with l = kappa for kappa > 0,
// l = -kappa - 1 for kappa < 0; the decaying exterior solution uses k_l.

namespace steklov {

namespace {

int upper_order(int kappa) { return kappa > 0 ? kappa : -kappa - 1; }

double sph_j(int l, double x) { return gsl_sf_bessel_jl(l, x); }
double sph_i(int l, double x) { return gsl_sf_bessel_il_scaled(l, x); }
double sph_k(int l, double x) { return gsl_sf_bessel_kl_scaled(l, x); }

double mit_condition(double radius, double e, double m, int kappa) {
  const RadialPair in = radial_interior(radius, e, m, kappa);
  return in.g + in.f;
}

double step_condition(double radius, double e, double m, double mass_out, int kappa) {
  const RadialPair in = radial_interior(radius, e, m, kappa);
  const RadialPair out = radial_exterior(radius, e, mass_out, kappa);
  return in.f * out.g - out.f * in.g;
}

struct GslQuiet {
  gsl_error_handler_t* previous = gsl_set_error_handler_off();
  ~GslQuiet() { gsl_set_error_handler(previous); }
};

}  // namespace

RadialPair radial_interior(double r, double e, double m, int kappa) {
  if (kappa == 0) throw ArgumentError("kappa must be nonzero");
  const int l = upper_order(kappa);
  const int lower = kappa < 0 ? l + 1 : l - 1;
  if (std::abs(e) >= m) {
    const double p = std::sqrt(e * e - m * m);
    const double g = sph_j(l, p * r);
    const double f = (kappa < 0 ? -p : p) * sph_j(lower, p * r) / (e + m);
    return {g, f};
  }
  const double p = std::sqrt(m * m - e * e);
  return {sph_i(l, p * r), p * sph_i(lower, p * r) / (e + m)};
}

RadialPair radial_exterior(double r, double e, double mass, int kappa) {
  if (kappa == 0) throw ArgumentError("kappa must be nonzero");
  if (!(std::abs(e) < mass)) throw ArgumentError("decaying exterior solutions need |e| < mass");
  const int l = upper_order(kappa);
  const double q = std::sqrt(mass * mass - e * e);
  const double g = sph_k(l, q * r);
  const double f = -q * sph_k(kappa < 0 ? l + 1 : l - 1, q * r) / (e + mass);
  return {g, f};
}

std::vector<double> radial_oracle(double radius, double m, std::optional<double> M, int kappa, int count) {
  if (!(radius > 0.0)) throw ArgumentError("radial_oracle needs R > 0");
  if (!(m > 0.0)) throw ArgumentError("radial_oracle needs m > 0");
  if (kappa == 0) throw ArgumentError("radial_oracle needs kappa != 0");
  if (M && !(*M > 0.0)) throw ArgumentError("radial_oracle needs M > 0");
  if (count < 0) throw ArgumentError("radial_oracle needs count >= 0");
  std::vector<double> roots;
  if (count == 0) return roots;
  const GslQuiet quiet;

  // march in interior momentum p, e = sqrt(p^2 + m^2); root spacing is about pi / R
  auto condition = [&](double p) {
    const double e = std::hypot(p, m);
    return M ? step_condition(radius, e, m, m + *M, kappa) : mit_condition(radius, e, m, kappa);
  };
  const double p_max = M ? std::sqrt((m + *M) * (m + *M) - m * m) : std::numeric_limits<double>::infinity();
  const double dp = std::numbers::pi / (256.0 * radius);
  const double p_cap = std::min(p_max, 4.0 * std::numbers::pi * (count + std::abs(kappa) + 4) / radius);
  // start away from p = 0, where regular solutions with l >= 1 vanish identically
  double lo = 1e-2 * dp;
  double f_lo = condition(lo);
  while (static_cast<int>(roots.size()) < count && lo < p_cap) {
    const double hi = std::min(lo + dp, p_cap * (1.0 - 1e-12));
    if (hi <= lo) break;
    const double f_hi = condition(hi);
    if (f_hi == 0.0) {
      roots.push_back(std::hypot(hi, m));
    } else if (std::signbit(f_lo) != std::signbit(f_hi) && std::isfinite(f_lo) && std::isfinite(f_hi)) {
      double a = lo, b = hi, fa = f_lo;
      for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
        const double c = 0.5 * (a + b);
        const double fc = condition(c);
        if (std::signbit(fc) == std::signbit(fa)) {
          a = c;
          fa = fc;
        } else {
          b = c;
        }
      }
      roots.push_back(std::hypot(0.5 * (a + b), m));
    }
    lo = hi;
    f_lo = f_hi;
  }
  return roots;
}

}  // namespace steklov
