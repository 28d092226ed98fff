#include "steklov/sphere_assembly.hpp"

#include <cmath>
#include <numbers>

#include "steklov/harmonics.hpp"
#include "steklov/parallel.hpp"
#include "steklov/quadrature.hpp"

namespace steklov::sphere {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kPanelPoints = 12;

// sigma_a - sigma_b for the spin rotation U = diag(e^{-i phi/2}, e^{i phi/2}, e^{-i phi/2}, e^{i phi/2}).
constexpr int kSpinSign[4] = {1, -1, 1, -1};

int nphi_of(const SurfaceMesh& mesh) { return 2 * mesh.sphere->order; }

}  // namespace

PolarRule polar_rule(double radius, int order, const Vec3& center, double first_panel) {
  const Vec3 c = center.normalized();
  Vec3 e2 = Vec3::UnitZ().cross(c);
  if (e2.norm() < 1e-12) e2 = Vec3::UnitY();
  e2.normalize();
  const Vec3 e1 = e2.cross(c);

  const Rule1D polar = graded_rule(first_panel, kPi / order, kPi, kPanelPoints, 2 * order + 8);
  const int naz = 2 * order;
  const double daz = 2.0 * kPi / naz;
  PolarRule rule;
  rule.points.reserve(polar.nodes.size() * naz);
  rule.weights.reserve(polar.nodes.size() * naz);
  for (std::size_t p = 0; p < polar.nodes.size(); ++p) {
    const double th = polar.nodes[p], st = std::sin(th), ct = std::cos(th);
    for (int s = 0; s < naz; ++s) {
      const double az = (s + 0.5) * daz;
      rule.points.push_back(radius * (ct * c + st * (std::cos(az) * e1 + std::sin(az) * e2)));
      rule.weights.push_back(radius * radius * st * polar.weights[p] * daz);
    }
  }
  return rule;
}

double kernel_length(const KernelParams& p) { return 1.0 / std::max(1.0, std::abs(p.k)); }

Eigen::MatrixXcd interpolated_row(const SurfaceMesh& mesh, const PolarRule& rule, const SourceKernel& kernel) {
  const int order = mesh.sphere->order;
  const double radius = mesh.sphere->radius;
  const int lmax = order - 1;
  const Eigen::Index nq = static_cast<Eigen::Index>(rule.points.size());
  const Eigen::Index n = static_cast<Eigen::Index>(mesh.size());

  Eigen::MatrixXd kre(16, nq), kim(16, nq);
  for (Eigen::Index q = 0; q < nq; ++q) {
    const SpinorMatrix k = rule.weights[q] * kernel(rule.points[q]);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        kre(4 * a + b, q) = k(a, b).real();
        kim(4 * a + b, q) = k(a, b).imag();
      }
    }
  }
  Eigen::MatrixXd interp(nq, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Vec3& xj = mesh.normals[j];
    const double wj = mesh.weights[j];
    for (Eigen::Index q = 0; q < nq; ++q) {
      interp(q, j) = wj * band_kernel(lmax, rule.points[q].dot(xj) / radius, radius);
    }
  }
  const Eigen::MatrixXd rre = kre * interp, rim = kim * interp;
  Eigen::MatrixXcd row(4, 4 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) row(a, 4 * j + b) = cplx(rre(4 * a + b, j), rim(4 * a + b, j));
    }
  }
  return row;
}

void rotate_row(const SurfaceMesh& mesh, const Eigen::MatrixXcd& ring_row, int k, Eigen::Ref<Eigen::MatrixXcd> out) {
  const int nphi = nphi_of(mesh);
  const int rings = mesh.sphere->order;
  const double phi = 2.0 * kPi * k / nphi;
  const cplx up = std::polar(1.0, -phi), down = std::polar(1.0, phi);
  cplx phase[4][4];
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const int d = kSpinSign[a] - kSpinSign[b];
      phase[a][b] = d == 0 ? cplx(1.0) : (d > 0 ? up : down);
    }
  }
  for (int t = 0; t < rings; ++t) {
    for (int kk = 0; kk < nphi; ++kk) {
      const Eigen::Index dst = 4 * (static_cast<Eigen::Index>(t) * nphi + kk);
      const Eigen::Index src = 4 * (static_cast<Eigen::Index>(t) * nphi + ((kk - k) % nphi + nphi) % nphi);
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) out(a, dst + b) = phase[a][b] * ring_row(a, src + b);
      }
    }
  }
}

std::vector<Eigen::MatrixXcd> project_rows(const SurfaceMesh& mesh, const std::vector<Eigen::MatrixXcd>& rows) {
  const int rings = mesh.sphere->order;
  const int nphi = nphi_of(mesh);
  const int lmax = rings - 1;
  const double radius = mesh.sphere->radius;
  const Eigen::Index n4 = 4 * static_cast<Eigen::Index>(mesh.size());
  std::vector<Eigen::MatrixXcd> out(rings, Eigen::MatrixXcd::Zero(4, n4));
  parallel_for(rings, [&](int t) {
    const Vec3 xt = mesh.normals[static_cast<std::size_t>(t) * nphi];
    Eigen::MatrixXcd rotated(4, n4);
    for (int tp = 0; tp < rings; ++tp) {
      for (int kp = 0; kp < nphi; ++kp) {
        const std::size_t j = static_cast<std::size_t>(tp) * nphi + kp;
        const double h = mesh.weights[j] * band_kernel(lmax, xt.dot(mesh.normals[j]), radius);
        rotate_row(mesh, rows[tp], kp, rotated);
        out[t] += h * rotated;
      }
    }
  });
  return out;
}

Eigen::MatrixXcd expand_rows(const SurfaceMesh& mesh, const std::vector<Eigen::MatrixXcd>& rows) {
  const int rings = mesh.sphere->order;
  const int nphi = nphi_of(mesh);
  const Eigen::Index n4 = 4 * static_cast<Eigen::Index>(mesh.size());
  Eigen::MatrixXcd full(n4, n4);
  parallel_for(rings, [&](int t) {
    Eigen::MatrixXcd rotated(4, n4);
    for (int k = 0; k < nphi; ++k) {
      rotate_row(mesh, rows[t], k, rotated);
      full.middleRows(4 * (static_cast<Eigen::Index>(t) * nphi + k), 4) = rotated;
    }
  });
  return full;
}

Vec3 ring_direction(const SurfaceMesh& mesh, int ring) {
  return mesh.normals[static_cast<std::size_t>(ring) * nphi_of(mesh)];
}

std::vector<Eigen::MatrixXcd> ring_rows(const SurfaceMesh& mesh, double scale,
                                        const std::function<SourceKernel(const Vec3& target)>& kernel_of,
                                        double first_panel) {
  const int rings = mesh.sphere->order;
  const double radius = mesh.sphere->radius;
  std::vector<Eigen::MatrixXcd> rows(rings);
  parallel_for(rings, [&](int t) {
    const Vec3 dir = ring_direction(mesh, t);
    const PolarRule rule = polar_rule(radius, rings, dir, first_panel);
    rows[t] = interpolated_row(mesh, rule, kernel_of(scale * radius * dir));
  });
  return rows;
}

}  // namespace steklov::sphere
