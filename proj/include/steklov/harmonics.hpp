#pragma once

#include <vector>

#include "steklov/geometry.hpp"

namespace steklov {

// Position of (l, m), -l <= m <= l, in a coefficient vector.
constexpr int sh_index(int l, int m) { return l * l + l + m; }
constexpr int sh_count(int lmax) { return (lmax + 1) * (lmax + 1); }

// Orthonormal Y_lm on the unit sphere with the Condon-Shortley phase, indexed by sh_index.
std::vector<cplx> spherical_harmonics(int lmax, const Vec3& dir);

// P_0(x) .. P_L(x).
std::vector<double> legendre_series(int lmax, double x);

// Reproducing kernel of degree <= lmax for surface measure on a sphere of radius R:
// sum_l (2l+1)/(4 pi R^2) P_l(cos_angle).
double band_kernel(int lmax, double cos_angle, double radius);

// Spectral transform on a sphere_mesh. Nodal fields are exactly resolved up to degree order - 1.
class SphereTransform {
 public:
  explicit SphereTransform(const SurfaceMesh& mesh);

  int degree() const { return lmax_; }
  int order() const { return order_; }
  double radius() const { return radius_; }

  // nodal (N) -> coefficients (sh_count(degree())), unit-sphere normalization.
  Eigen::VectorXcd analyze(const Eigen::VectorXcd& nodal) const;
  Eigen::VectorXcd synthesize(const Eigen::VectorXcd& coeffs) const;

  // Spinor fields use the node-major 4N layout; coefficients are sh_count x 4.
  Eigen::MatrixXcd analyze_spinor(const Eigen::VectorXcd& field) const;
  Eigen::VectorXcd synthesize_spinor(const Eigen::MatrixXcd& coeffs) const;

 private:
  int order_;
  int lmax_;
  double radius_;
  std::vector<double> ring_weight_;              // Gauss weight in cos(theta)
  std::vector<std::vector<double>> ring_legendre_;  // normalized P_l^m(cos theta_t), m >= 0, GSL layout
};

// Scalar and spinor evaluation of an expansion at an arbitrary direction.
cplx evaluate_expansion(const Eigen::VectorXcd& coeffs, int lmax, const Vec3& dir);
Spinor evaluate_spinor_expansion(const Eigen::MatrixXcd& coeffs, int lmax, const Vec3& dir);

}  // namespace steklov
