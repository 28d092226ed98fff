#include "steklov/kernels.hpp"

#include <cmath>
#include <numbers>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

double checked_norm(const Vec3& x) {
  const double r = x.norm();
  if (r == 0.0) throw DomainError("kernel evaluated at x = 0");
  return r;
}

}  // namespace

cplx branch_sqrt(cplx z, double m) {
  const cplx w = z * z - m * m;
  if (w.imag() == 0.0 && w.real() >= 0.0) return std::sqrt(w.real());
  cplx k = std::sqrt(w);
  if (k.imag() < 0.0) k = -k;
  return k;
}

KernelParams make_params(double m, cplx z) { return {m, z, branch_sqrt(z, m)}; }

SpinorMatrix phi_z(const Vec3& x, const KernelParams& p) {
  const double r = checked_norm(x);
  const cplx e = std::exp(I_unit * p.k * r) / (kFourPi * r);
  SpinorMatrix out = (p.m * e) * dirac_beta();
  out.diagonal().array() += p.z * e;
  out += (e * (1.0 - I_unit * p.k * r) * I_unit / (r * r)) * alpha_dot(x);
  return out;
}

KernelSplit kernel_split(const Vec3& x, const KernelParams& p) {
  const double r = checked_norm(x);
  KernelSplit s;
  s.w_part = (I_unit / (kFourPi * r * r * r)) * alpha_dot(x);
  s.k_part = phi_z(x, p) - s.w_part;
  return s;
}

cplx single_layer_kernel(const Vec3& x, const KernelParams& p) {
  const double r = checked_norm(x);
  return std::exp(I_unit * p.k * r) / (kFourPi * r);
}

}  // namespace steklov
