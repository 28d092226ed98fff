#pragma once

#include <functional>
#include <vector>

#include "steklov/geometry.hpp"
#include "steklov/kernels.hpp"

// Singular and near-singular quadrature on sphere meshes. Integrals are taken on a polar grid
// centred at the target direction (graded in the polar angle, trapezoidal in azimuth), with the
// density represented by its degree order-1 spherical-harmonic interpolant.
namespace steklov::sphere {

struct PolarRule {
  std::vector<Vec3> points;
  std::vector<double> weights;
};

// Polar grid about `center` (unit) on the sphere of radius R. The first polar panel has width
// `first_panel`; panels grow geometrically to pi/order, then a Gauss tail covers the rest.
PolarRule polar_rule(double radius, int order, const Vec3& center, double first_panel);

// Width of the first polar panel for a kernel with these parameters (decay or oscillation length).
double kernel_length(const KernelParams& p);

using SourceKernel = std::function<SpinorMatrix(const Vec3& source)>;

// 4 x 4N row: sum_q w_q K(y_q) I(y_q, x_j) with I the band-limited interpolation kernel.
Eigen::MatrixXcd interpolated_row(const SurfaceMesh& mesh, const PolarRule& rule, const SourceKernel& kernel);

// Row of node (ring, k) from the azimuth-0 row of the same ring, by the spin rotation about e3.
void rotate_row(const SurfaceMesh& mesh, const Eigen::MatrixXcd& ring_row, int k, Eigen::Ref<Eigen::MatrixXcd> out);

// Left-multiplies the operator given by its ring rows with the nodal band projector.
std::vector<Eigen::MatrixXcd> project_rows(const SurfaceMesh& mesh, const std::vector<Eigen::MatrixXcd>& ring_rows);

// Full 4N x 4N matrix from ring rows.
Eigen::MatrixXcd expand_rows(const SurfaceMesh& mesh, const std::vector<Eigen::MatrixXcd>& ring_rows);

// Direction of node (ring, 0).
Vec3 ring_direction(const SurfaceMesh& mesh, int ring);

// Ring rows of an operator K with kernel kernel_of(target)(source), evaluated at targets
// scale * radius * ring_direction. scale = 1 gives the principal value on the surface.
std::vector<Eigen::MatrixXcd> ring_rows(const SurfaceMesh& mesh, double scale,
                                        const std::function<SourceKernel(const Vec3& target)>& kernel_of,
                                        double first_panel);

}  // namespace steklov::sphere
