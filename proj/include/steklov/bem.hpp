#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "steklov/geometry.hpp"
#include "steklov/kernels.hpp"

namespace steklov {

using MeshRef = std::shared_ptr<const SurfaceMesh>;

inline MeshRef share(SurfaceMesh mesh) { return std::make_shared<const SurfaceMesh>(std::move(mesh)); }

enum class OperatorLabel { cauchy, lambda, single_layer, ps_interior, ps_exterior, composite };

std::string to_string(OperatorLabel label);

// Dense (4N) x (4N) operator over mesh nodes, node-major: block (i, j) sits at rows 4i.., cols 4j..
// Quadrature weights of the source nodes are folded into the columns.
struct BoundaryOperator {
  Eigen::MatrixXcd matrix;
  MeshRef mesh;
  OperatorLabel label = OperatorLabel::composite;
  double mass = 0.0;
  cplx z = 0.0;

  Eigen::Index dim() const { return matrix.rows(); }
};

// Spinor samples on mesh nodes, node-major 4N layout.
struct TraceField {
  Eigen::VectorXcd values;
  MeshRef mesh;

  Spinor at(std::size_t i) const { return values.segment<4>(4 * static_cast<Eigen::Index>(i)); }
};

// On sphere meshes the Cauchy operator is exact on the resolved band (degree < order); nodal modes
// beyond it act through this 4x4 block, the half-space symbol at the first unresolved degree.
SpinorMatrix cauchy_complement_block(double radius, int order, const KernelParams& p);
BoundaryOperator assemble_cauchy(const MeshRef& mesh, const KernelParams& p);
BoundaryOperator assemble_lambda(const MeshRef& mesh, const KernelParams& p);
BoundaryOperator assemble_single_layer(const MeshRef& mesh, const KernelParams& p);
// Eigenvalues s_0..s_lmax of the single layer operator on a sphere of the given radius.
std::vector<cplx> single_layer_eigenvalues(double radius, int lmax, const KernelParams& p);

// Phi[g](x) = int phi_z(x - y) g(y) dsigma(y) for x off the surface.
struct PotentialValue {
  Spinor value;
  bool degraded = false;  // x closer to a general mesh than its node spacing
};
PotentialValue potential_eval_checked(const MeshRef& mesh, const KernelParams& p, const TraceField& density,
                                      const Vec3& x);
// Many targets at once, in parallel; warns once on stderr if any target is degraded.
std::vector<Spinor> potential_eval_many(const MeshRef& mesh, const KernelParams& p, const TraceField& density,
                                        const std::vector<Vec3>& points);
// As above; prints a warning to stderr when the quadrature is degraded.
Spinor potential_eval(const MeshRef& mesh, const KernelParams& p, const TraceField& density, const Vec3& x);

struct Inverse {
  BoundaryOperator op;
  double residual;  // max-abs entry of A A^-1 - I
};
// Dense LU; InversionError carrying sigma_min when sigma_min / sigma_max <= 1e-12.
Inverse invert_dense(const BoundaryOperator& op);

// -P+ beta Lambda_m^-1 P-, maps P- fields to P+ fields.
BoundaryOperator ps_interior(const MeshRef& mesh, const KernelParams& p);
// -P- beta Lambda_mass^-1 P+, maps P+ fields to P- fields.
BoundaryOperator ps_exterior(const MeshRef& mesh, double mass, cplx z);

// (1 - Laplace-Beltrami)^{s/2} applied spectrally; sphere meshes only. Nodal modes beyond the
// resolved band take the factor of degree = order.
TraceField sobolev_weight(const TraceField& field, double s);
// (1 + l(l+1)/R^2)^{s/2} for l = 0 .. order.
std::vector<double> sobolev_factors(const SurfaceMesh& mesh, double s);
// The same weight as a dense 4N x 4N matrix.
Eigen::MatrixXcd sobolev_matrix(const SurfaceMesh& mesh, double s);

// Nodewise multiplication by a 4x4 matrix field.
Eigen::MatrixXcd nodewise_left(const SurfaceMesh& mesh, const std::function<SpinorMatrix(std::size_t)>& block,
                               const Eigen::MatrixXcd& a);
Eigen::MatrixXcd nodewise_right(const SurfaceMesh& mesh, const Eigen::MatrixXcd& a,
                                const std::function<SpinorMatrix(std::size_t)>& block);
Eigen::VectorXcd nodewise_apply(const SurfaceMesh& mesh, const std::function<SpinorMatrix(std::size_t)>& block,
                                const Eigen::VectorXcd& v);
// Block-diagonal matrix of per-node 4x4 blocks.
Eigen::MatrixXcd nodewise_matrix(const SurfaceMesh& mesh, const std::function<SpinorMatrix(std::size_t)>& block);

// Weighted L2(Sigma) norm and adjoint: <u, v> = sum_i w_i v_i^* u_i.
double l2_norm(const SurfaceMesh& mesh, const Eigen::VectorXcd& v);
Eigen::MatrixXcd l2_adjoint(const SurfaceMesh& mesh, const Eigen::MatrixXcd& a);
// Operator norm on L2(Sigma)^4, i.e. the spectral norm of W^{1/2} A W^{-1/2}, by power iteration
// on A* A. `apply` and `apply_adjoint` act on nodal vectors; the adjoint is taken in L2(Sigma).
using LinearMap = std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>;
double l2_operator_norm(const SurfaceMesh& mesh, const LinearMap& apply, const LinearMap& apply_adjoint);
double l2_operator_norm(const SurfaceMesh& mesh, const Eigen::MatrixXcd& a);

// Binary dump: "SDOP1", int64 N, int32 label, double m, double re z, double im z, then the
// row-major complex matrix as (re, im) doubles, little-endian.
void write_operator(const BoundaryOperator& op, const std::string& path);
BoundaryOperator read_operator(const std::string& path, MeshRef mesh);

}  // namespace steklov
