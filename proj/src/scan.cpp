#include <algorithm>
#include <cmath>
#include <limits>

#include "steklov/errors.hpp"
#include "steklov/spectral.hpp"

namespace steklov {

namespace {

constexpr double kGolden = 0.6180339887498949;

// W^{1/2} A W^{-1/2}: singular values of the L2(Sigma) operator.
Eigen::VectorXd l2_singular_values(const SurfaceMesh& mesh, const Eigen::MatrixXcd& a) {
  const Eigen::Index n4 = a.rows();
  Eigen::VectorXd w(n4);
  for (Eigen::Index i = 0; i < n4; ++i) w[i] = std::sqrt(mesh.weights[i / 4]);
  const Eigen::MatrixXcd scaled = w.asDiagonal() * a * w.cwiseInverse().asDiagonal();
  Eigen::VectorXd sv = Eigen::BDCSVD<Eigen::MatrixXcd>(scaled).singularValues();
  std::sort(sv.begin(), sv.end());
  return sv;
}

Eigen::MatrixXcd scan_operator(const SpectralScan& scan, double a) {
  if (scan.M > 0.0) return assemble_psi(scan.mesh, scan.m, scan.M, a).matrix;
  return assemble_lambda(scan.mesh, make_params(scan.m, a)).matrix;
}

double sigma_min_at(const SpectralScan& scan, double a) { return scan_singular_values(scan, a)[0]; }

SpectralScan run_scan(const MeshRef& mesh, double m, double M, double lo, double hi, int steps) {
  if (!mesh) throw ArgumentError("scan needs a mesh");
  if (!(m > 0.0)) throw ArgumentError("scan needs m > 0");
  if (steps < 8) throw ArgumentError("scan needs steps >= 8");
  if (!(lo < hi)) throw ArgumentError("scan needs lo < hi");
  SpectralScan scan;
  scan.m = m;
  scan.M = M;
  scan.mesh = mesh;
  scan.points.resize(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    ScanPoint& pt = scan.points[static_cast<std::size_t>(i)];
    pt.a = lo + (hi - lo) * i / (steps - 1);
    try {
      pt.sigma_min = sigma_min_at(scan, pt.a);
    } catch (const InversionError& e) {
      pt.sigma_min = std::numeric_limits<double>::quiet_NaN();
      pt.flagged = true;
      pt.flag = e.what();
    }
  }
  return scan;
}

}  // namespace

SpectralScan bs_scan(const MeshRef& mesh, double m, double M, double lo, double hi, int steps) {
  if (!(M > 0.0)) throw ArgumentError("bs_scan needs M > 0");
  if (!(lo > -(m + M) && hi < m + M)) throw ArgumentError("bs_scan interval must lie in (-(m+M), m+M)");
  return run_scan(mesh, m, M, lo, hi, steps);
}

SpectralScan mit_scan(const MeshRef& mesh, double m, double lo, double hi, int steps) {
  if (!(lo > m)) throw ArgumentError("mit_scan interval must lie above m");
  return run_scan(mesh, m, 0.0, lo, hi, steps);
}

Eigen::VectorXd scan_singular_values(const SpectralScan& scan, double a) {
  return l2_singular_values(*scan.mesh, scan_operator(scan, a));
}

std::vector<std::pair<int, int>> scan_minima(const SpectralScan& scan, double threshold) {
  std::vector<std::pair<int, int>> out;
  const int n = static_cast<int>(scan.points.size());
  for (int i = 1; i + 1 < n; ++i) {
    const double s = scan.points[i].sigma_min;
    if (!std::isfinite(s) || s >= threshold) continue;
    const double left = scan.points[i - 1].sigma_min, right = scan.points[i + 1].sigma_min;
    if (std::isfinite(left) && std::isfinite(right) && s <= left && s < right) out.emplace_back(i - 1, i + 1);
  }
  return out;
}

EigenResult refine_eigenvalue(const SpectralScan& scan, std::pair<int, int> bracket) {
  const auto [i0, i1] = bracket;
  const int n = static_cast<int>(scan.points.size());
  if (i0 < 0 || i1 >= n || i1 - i0 < 2) throw BracketError("bracket must span at least one interior scan point");
  const double s0 = scan.points[i0].sigma_min, s1 = scan.points[i1].sigma_min;
  double inner = std::numeric_limits<double>::infinity();
  for (int i = i0 + 1; i < i1; ++i) inner = std::min(inner, scan.points[i].sigma_min);
  if (!std::isfinite(s0) || !std::isfinite(s1) || !(inner < s0 && inner < s1)) {
    throw BracketError("bracket [" + std::to_string(scan.points[i0].a) + ", " + std::to_string(scan.points[i1].a) +
                       "] holds no interior minimum of sigma_min");
  }
  double a = scan.points[i0].a, b = scan.points[i1].a;
  double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
  double fc = sigma_min_at(scan, c), fd = sigma_min_at(scan, d);
  const double width = 1e-6 * scan.m;
  while (b - a > width) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = sigma_min_at(scan, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = sigma_min_at(scan, d);
    }
  }
  const double root = 0.5 * (a + b);
  const Eigen::VectorXd sv = scan_singular_values(scan, root);
  const double residual = sv[0];
  int multiplicity = 0;
  for (Eigen::Index i = 0; i < sv.size() && sv[i] <= 10.0 * residual; ++i) ++multiplicity;
  return {root, residual, multiplicity};
}

}  // namespace steklov
