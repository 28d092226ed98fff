#include <cmath>

#include "steklov/errors.hpp"
#include "steklov/spectral.hpp"

namespace steklov {

namespace {

// -P_out beta Lambda^-1 P_in from an already inverted Lambda.
Eigen::MatrixXcd ps_from_inverse(const SurfaceMesh& mesh, const Eigen::MatrixXcd& lambda_inv, Side out, Side in) {
  const SpinorMatrix beta = dirac_beta();
  Eigen::MatrixXcd a = nodewise_left(
      mesh, [&](std::size_t i) -> SpinorMatrix { return -projector(mesh.normals[i], out) * beta; }, lambda_inv);
  return nodewise_right(mesh, a, [&](std::size_t i) { return projector(mesh.normals[i], in); });
}

}  // namespace

KreinBlocks krein_blocks(const MeshRef& mesh, double m, double M, cplx z) {
  if (!mesh) throw ArgumentError("krein_blocks needs a mesh");
  if (!(m > 0.0)) throw ArgumentError("krein_blocks needs m > 0");
  if (!(M > 0.0)) throw ArgumentError("krein_blocks needs M > 0");
  const SurfaceMesh& s = *mesh;
  KreinBlocks b;
  b.m = m;
  b.M = M;
  b.z = z;
  b.lambda_int_inv = invert_dense(assemble_lambda(mesh, make_params(m, z))).op.matrix;
  b.lambda_ext_inv = invert_dense(assemble_lambda(mesh, make_params(m + M, z))).op.matrix;
  b.a_int = {ps_from_inverse(s, b.lambda_int_inv, Side::plus, Side::minus), mesh, OperatorLabel::ps_interior, m, z};
  b.a_ext = {ps_from_inverse(s, b.lambda_ext_inv, Side::minus, Side::plus), mesh, OperatorLabel::ps_exterior, m + M, z};

  const Eigen::Index n4 = b.a_int.dim();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n4, n4);
  b.psi = {id - b.a_int.matrix - b.a_ext.matrix, mesh, OperatorLabel::composite, m, z};
  const Eigen::MatrixXcd cross = b.a_int.matrix * b.a_ext.matrix + b.a_ext.matrix * b.a_int.matrix;
  b.xi = {invert_dense({id - cross, mesh, OperatorLabel::composite, m, z}).op.matrix, mesh, OperatorLabel::composite, m,
          z};
  auto sandwich = [&](Side side) {
    Eigen::MatrixXcd a = nodewise_left(s, [&](std::size_t i) { return projector(s.normals[i], side); }, b.xi.matrix);
    return nodewise_right(s, a, [&](std::size_t i) { return projector(s.normals[i], side); });
  };
  b.xi_plus = {sandwich(Side::plus), mesh, OperatorLabel::composite, m, z};
  b.xi_minus = {sandwich(Side::minus), mesh, OperatorLabel::composite, m, z};
  return b;
}

BoundaryOperator assemble_psi(const MeshRef& mesh, double m, double M, cplx z) {
  if (!mesh) throw ArgumentError("assemble_psi needs a mesh");
  if (!(m > 0.0) || !(M > 0.0)) throw ArgumentError("assemble_psi needs m > 0 and M > 0");
  const SurfaceMesh& s = *mesh;
  const Eigen::MatrixXcd li = invert_dense(assemble_lambda(mesh, make_params(m, z))).op.matrix;
  const Eigen::MatrixXcd le = invert_dense(assemble_lambda(mesh, make_params(m + M, z))).op.matrix;
  Eigen::MatrixXcd psi = -ps_from_inverse(s, li, Side::plus, Side::minus);
  psi -= ps_from_inverse(s, le, Side::minus, Side::plus);
  psi.diagonal().array() += 1.0;
  return {std::move(psi), mesh, OperatorLabel::composite, m, z};
}

KreinInverseCheck check_krein_inverse(const KreinBlocks& blocks) {
  const Inverse psi_inv = invert_dense(blocks.psi);
  const Eigen::Index n4 = blocks.psi.dim();
  const Eigen::MatrixXcd formula =
      blocks.xi.matrix * (Eigen::MatrixXcd::Identity(n4, n4) + blocks.a_int.matrix + blocks.a_ext.matrix);
  const SurfaceMesh& s = *blocks.psi.mesh;
  const double diff = l2_operator_norm(s, Eigen::MatrixXcd(psi_inv.op.matrix - formula));
  const double ref = l2_operator_norm(s, psi_inv.op.matrix);
  return {diff / ref, psi_inv.residual};
}

}  // namespace steklov
