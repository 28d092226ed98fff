#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "steklov/bem.hpp"

namespace steklov {

// Boundary blocks of the large-coupling Krein formula at (m, M, z).
struct KreinBlocks {
  BoundaryOperator a_int;     // interior PS operator at mass m
  BoundaryOperator a_ext;     // exterior PS operator at mass m + M
  BoundaryOperator psi;       // I - a_int - a_ext
  BoundaryOperator xi;        // (I - a_int a_ext - a_ext a_int)^-1
  BoundaryOperator xi_plus;   // P+ xi P+ = (I - a_int a_ext)^-1 on the P+ range
  BoundaryOperator xi_minus;  // P- xi P- = (I - a_ext a_int)^-1 on the P- range
  Eigen::MatrixXcd lambda_int_inv;
  Eigen::MatrixXcd lambda_ext_inv;
  double m = 0.0;
  double M = 0.0;
  cplx z = 0.0;
};

KreinBlocks krein_blocks(const MeshRef& mesh, double m, double M, cplx z);
// Psi alone, without the Xi inversion.
BoundaryOperator assemble_psi(const MeshRef& mesh, double m, double M, cplx z);

// Relative L2 operator-norm distance ||Psi^-1 - Xi (I + a_int + a_ext)|| / ||Psi^-1||, and the LU residual of Psi.
struct KreinInverseCheck {
  double relative_difference;
  double lu_residual;
};
KreinInverseCheck check_krein_inverse(const KreinBlocks& blocks);

struct ScanPoint {
  double a;
  double sigma_min;  // NaN when flagged
  bool flagged = false;
  std::string flag;  // reason when flagged
};

struct SpectralScan {
  std::vector<ScanPoint> points;
  double m = 0.0;
  double M = 0.0;  // 0 for the MIT scan of Lambda_m
  MeshRef mesh;
};

// sigma_min of Psi_M(a) on a uniform grid of `steps` points over [lo, hi].
SpectralScan bs_scan(const MeshRef& mesh, double m, double M, double lo, double hi, int steps);
// sigma_min of Lambda_m(a), a > m on the outgoing branch; zero exactly at MIT eigenvalues.
SpectralScan mit_scan(const MeshRef& mesh, double m, double lo, double hi, int steps);

// Singular values (ascending) of the operator the scan samples, at a.
Eigen::VectorXd scan_singular_values(const SpectralScan& scan, double a);

struct EigenResult {
  double value;
  double residual;  // sigma_min at the root
  int multiplicity_hint;
};

// Golden-section minimization of sigma_min over [a_first, a_last] of the bracket.
EigenResult refine_eigenvalue(const SpectralScan& scan, std::pair<int, int> bracket);

// Index brackets around interior local minima of the scan whose value is below `threshold`.
std::vector<std::pair<int, int>> scan_minima(const SpectralScan& scan, double threshold);

// Bisection on the radial transcendental equation of the ball for Dirac angular index kappa != 0.
// Without M: MIT bag eigenvalues in (m, inf). With M: eigenvalues of the step operator in (m, m + M).
std::vector<double> radial_oracle(double radius, double m, std::optional<double> M, int kappa, int count);

// Radial amplitudes of the interior solution at energy e: upper g(r) and lower f(r) with
// psi = (g Omega_kappa, i f Omega_-kappa).
struct RadialPair {
  double g;
  double f;
};
RadialPair radial_interior(double r, double e, double m, int kappa);
// Decaying exterior solution for |e| < mass, up to a positive factor.
RadialPair radial_exterior(double r, double e, double mass, int kappa);

struct RateFit {
  double slope;
  double intercept;
  double r2;
};
RateFit rate_fit(const std::vector<std::pair<double, double>>& pairs);

}  // namespace steklov
