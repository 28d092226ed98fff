#pragma once

#include <Eigen/Dense>
#include <complex>

namespace steklov {

using cplx = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using SpinorMatrix = Eigen::Matrix<cplx, 4, 4, Eigen::RowMajor>;
using Spinor = Eigen::Matrix<cplx, 4, 1>;

enum class Side { plus, minus };

inline constexpr cplx I_unit{0.0, 1.0};

SpinorMatrix identity4();

// Dirac representation: alpha_j = [[0, sigma_j], [sigma_j, 0]].
SpinorMatrix dirac_alpha(int j);
SpinorMatrix dirac_beta();
// gamma5 = -i alpha_1 alpha_2 alpha_3 = [[0, I2], [I2, 0]].
SpinorMatrix gamma5();

SpinorMatrix alpha_dot(const Vec3& v);
SpinorMatrix alpha_dot(const CVec3& v);
// S.v = -gamma5 (alpha.v).
SpinorMatrix spin_dot(const Vec3& v);

// P_plus = (I - i beta alpha.n)/2, P_minus = (I + i beta alpha.n)/2.
// n must be unit to 1e-12; it is never renormalized.
SpinorMatrix projector(const Vec3& n, Side sign);

}  // namespace steklov
