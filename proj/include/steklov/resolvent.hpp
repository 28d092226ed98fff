#pragma once

#include <functional>
#include <vector>

#include "steklov/bem.hpp"

namespace steklov {

struct VolumeGrid {
  std::vector<Vec3> points;
  std::vector<double> weights;
};

// Gauss-Legendre in r on [0, R] times the unit sphere_mesh of `angular_order` directions.
VolumeGrid ball_grid(double radius, int radial, int angular_order);
// Shell inner < r < outer; radial Gauss panels grow geometrically from `layer` at the inner sphere.
VolumeGrid shell_grid(double inner, double outer, int radial, int angular_order, double layer);

double l2_norm(const VolumeGrid& grid, const std::vector<Spinor>& values);

using SpinorField = std::function<Spinor(const Vec3&)>;

// f vanishes outside inner <= |x| <= outer; inner = 0 for a ball.
struct RadialSupport {
  double inner = 0.0;
  double outer = 1.0;
};

// (D_mass - z)^-1 f at x by polar rays from x; the 1/r^2 kernel singularity cancels against the
// ray Jacobian. Rays use 4 * angular_order azimuths around x.
Spinor free_resolvent_at(const Vec3& x, const SpinorField& f, const RadialSupport& support, const KernelParams& p,
                         int angular_order = 8);

enum class ResolventKind { free, mit, exterior_mit, full };

struct ResolventProblem {
  ResolventKind kind = ResolventKind::mit;
  MeshRef mesh;       // sphere mesh of the ball boundary
  double m = 1.0;     // interior mass; operator mass for free and exterior_mit
  double M = 0.0;     // exterior coupling, full only
  cplx z = 0.0;
  SpinorField f;
  RadialSupport support;  // inside the ball for mit and full, outside for exterior_mit
  int angular_order = 8;
};

struct ResolventResult {
  std::vector<Spinor> values;  // at the requested points
  TraceField trace;            // boundary trace from the jump relations (interior side; exterior for exterior_mit)
};

// free: r (D_m - z)^-1 e f
// mit: u0 - Phi Lambda^-1 t u0 with u0 = (D_m - z)^-1 f
// exterior_mit: same with the exterior trace, vanishing P+ trace
// full: R_MIT f + Phi_m Lambda_m^-1 P- Psi^-1 P+ t R_MIT f inside, Phi_{m+M} Lambda_{m+M}^-1 P+ Psi^-1 P+ t R_MIT f outside
ResolventResult resolvent_apply(const ResolventProblem& problem, const std::vector<Vec3>& points);

// ||(R_M - R_MIT) f||_{L2(grid)} for each coupling in `couplings`; the MIT part is computed once.
std::vector<std::pair<double, double>> resolvent_rate(const ResolventProblem& problem, const VolumeGrid& grid,
                                                      const std::vector<double>& couplings);

}  // namespace steklov
