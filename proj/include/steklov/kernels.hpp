#pragma once

#include "steklov/clifford.hpp"

namespace steklov {

// k = sqrt(z^2 - m^2) with Im k >= 0; on the cut (z^2 - m^2 > 0 real) the positive root.
cplx branch_sqrt(cplx z, double m);

struct KernelParams {
  double m;
  cplx z;
  cplx k;
};

KernelParams make_params(double m, cplx z);

// Fundamental solution of (D_m - z): e^{ikr}/(4 pi r) (z + m beta + (1 - ikr) i alpha.x / r^2).
SpinorMatrix phi_z(const Vec3& x, const KernelParams& p);

struct KernelSplit {
  SpinorMatrix k_part;  // O(1/r) remainder
  SpinorMatrix w_part;  // i alpha.x / (4 pi r^3), odd
};

KernelSplit kernel_split(const Vec3& x, const KernelParams& p);

// e^{ikr}/(4 pi r); the single layer operator applies it times I4.
cplx single_layer_kernel(const Vec3& x, const KernelParams& p);

}  // namespace steklov
