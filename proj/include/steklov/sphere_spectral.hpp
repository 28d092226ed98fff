#pragma once

#include <vector>

#include "steklov/bem.hpp"

// Exact rotation-invariant boundary operators on a sphere, block-diagonal in the spinor spherical
// harmonics. Each total angular momentum j carries a 4x4 block acting on the coefficients of
// (Omega_k1, 0), (Omega_k2, 0), (0, Omega_k1), (0, Omega_k2) with k1 = -(j + 1/2), k2 = j + 1/2.
namespace steklov {

using Spinor2 = Eigen::Vector2cd;

// Omega_{kappa, m_j} at a unit direction, m_j = mj2 / 2; sigma.x Omega_kappa = -Omega_-kappa.
Spinor2 spinor_harmonic(int kappa, int mj2, const Vec3& dir);

struct ChannelOperator {
  double radius = 1.0;
  std::vector<Eigen::Matrix4cd> blocks;  // blocks[i] for j = i + 1/2

  int jmax2() const { return 2 * static_cast<int>(blocks.size()) - 1; }
};

// Interior PS map of the ball at mass m and real energy z (|z| != m), channels j <= lmax + 1/2.
ChannelOperator ps_interior_channels(double radius, int lmax, double m, double z);
// Exterior PS map of the ball complement at mass `mass`, |z| < mass.
ChannelOperator ps_exterior_channels(double radius, int lmax, double mass, double z);

// Applies the channel operator to a nodal spinor field on a sphere mesh through the spherical
// harmonic transform; content beyond degree order - 1 is dropped.
Eigen::VectorXcd apply_channels(const ChannelOperator& op, const SurfaceMesh& mesh, const Eigen::VectorXcd& field);

// Boundary traces of the L2(ball)-normalized MIT eigenfunctions of channel kappa at eigenvalue
// `energy`, one per m_j = -j .. j.
std::vector<TraceField> mit_eigentraces(const MeshRef& mesh, double m, int kappa, double energy);

// The MIT eigenfunction of (kappa, m_j) at x, normalized in L2 of the ball.
Spinor mit_eigenfunction(double radius, double m, int kappa, int mj2, double energy, const Vec3& x);

struct MkjResult {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXd mu;     // real parts of the eigenvalues, ascending
  double max_imag = 0.0;  // largest |Im| among the eigenvalues
  double hermitian_defect = 0.0;
};

// m_kj = 1/2 < beta Op(S.(xi ^ n)) g_k, g_j >_{L2(Sigma)} with Op(S.(xi ^ n)) = -(1/R) S.L applied spectrally.
MkjResult mkj_matrix(const MeshRef& mesh, const std::vector<TraceField>& eigentraces);

}  // namespace steklov
