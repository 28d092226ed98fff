#include "steklov/clifford.hpp"

#include <array>
#include <cmath>
#include <string>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

using Pauli = Eigen::Matrix2cd;

Pauli pauli(int j) {
  Pauli s = Pauli::Zero();
  switch (j) {
    case 1:
      s(0, 1) = 1.0;
      s(1, 0) = 1.0;
      break;
    case 2:
      s(0, 1) = -I_unit;
      s(1, 0) = I_unit;
      break;
    case 3:
      s(0, 0) = 1.0;
      s(1, 1) = -1.0;
      break;
    default:
      throw ArgumentError("dirac index must be 1, 2 or 3, got " + std::to_string(j));
  }
  return s;
}

const std::array<SpinorMatrix, 3>& alphas() {
  static const std::array<SpinorMatrix, 3> table = [] {
    std::array<SpinorMatrix, 3> a;
    for (int j = 1; j <= 3; ++j) {
      a[j - 1].setZero();
      a[j - 1].block<2, 2>(0, 2) = pauli(j);
      a[j - 1].block<2, 2>(2, 0) = pauli(j);
    }
    return a;
  }();
  return table;
}

}  // namespace

SpinorMatrix identity4() { return SpinorMatrix::Identity(); }

SpinorMatrix dirac_alpha(int j) {
  if (j < 1 || j > 3) {
    throw ArgumentError("dirac index must be 1, 2 or 3, got " + std::to_string(j));
  }
  return alphas()[j - 1];
}

SpinorMatrix dirac_beta() {
  SpinorMatrix b = SpinorMatrix::Zero();
  b(0, 0) = 1.0;
  b(1, 1) = 1.0;
  b(2, 2) = -1.0;
  b(3, 3) = -1.0;
  return b;
}

SpinorMatrix gamma5() {
  SpinorMatrix g = SpinorMatrix::Zero();
  g(0, 2) = 1.0;
  g(1, 3) = 1.0;
  g(2, 0) = 1.0;
  g(3, 1) = 1.0;
  return g;
}

SpinorMatrix alpha_dot(const Vec3& v) {
  const auto& a = alphas();
  return v.x() * a[0] + v.y() * a[1] + v.z() * a[2];
}

SpinorMatrix alpha_dot(const CVec3& v) {
  const auto& a = alphas();
  return v.x() * a[0] + v.y() * a[1] + v.z() * a[2];
}

SpinorMatrix spin_dot(const Vec3& v) { return -gamma5() * alpha_dot(v); }

SpinorMatrix projector(const Vec3& n, Side sign) {
  if (std::abs(n.norm() - 1.0) > 1e-12) {
    throw ArgumentError("projector needs a unit normal, |n| = " + std::to_string(n.norm()));
  }
  const cplx s = sign == Side::plus ? -I_unit : I_unit;
  return 0.5 * (identity4() + s * dirac_beta() * alpha_dot(n));
}

}  // namespace steklov
