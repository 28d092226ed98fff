#include "steklov/geometry.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "steklov/errors.hpp"
#include "steklov/quadrature.hpp"

namespace steklov {

SurfaceMesh sphere_mesh(double radius, int order) {
  if (!(radius > 0.0)) throw ArgumentError("sphere radius must be positive");
  if (order < 4 || order % 2 != 0) {
    throw ArgumentError("sphere order must be even and >= 4, got " + std::to_string(order));
  }
  const Rule1D polar = gauss_legendre(order, -1.0, 1.0);
  const int nphi = 2 * order;
  const double dphi = 2.0 * std::numbers::pi / nphi;
  SurfaceMesh mesh;
  mesh.kind = MeshKind::sphere;
  mesh.sphere = SphereInfo{radius, order};
  mesh.nodes.reserve(static_cast<std::size_t>(order) * nphi);
  // rings ordered from north to south
  for (int t = 0; t < order; ++t) {
    const double c = polar.nodes[order - 1 - t];
    const double w = polar.weights[order - 1 - t];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int k = 0; k < nphi; ++k) {
      const double phi = k * dphi;
      const Vec3 n(s * std::cos(phi), s * std::sin(phi), c);
      mesh.normals.push_back(n);
      mesh.nodes.push_back(radius * n);
      mesh.weights.push_back(radius * radius * w * dphi);
    }
  }
  return mesh;
}

SurfaceMesh mesh_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open mesh file " + path);
  SurfaceMesh mesh;
  mesh.kind = MeshKind::file;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    double v[7];
    for (double& x : v) {
      if (!(fields >> x)) {
        throw LoadError(path + ":" + std::to_string(lineno) + ": expected 7 numeric fields");
      }
    }
    std::string extra;
    if (fields >> extra) throw LoadError(path + ":" + std::to_string(lineno) + ": trailing field '" + extra + "'");
    const Vec3 n(v[3], v[4], v[5]);
    if (std::abs(n.norm() - 1.0) > 1e-10) {
      throw LoadError(path + ":" + std::to_string(lineno) + ": non-unit normal");
    }
    if (!(v[6] > 0.0)) throw LoadError(path + ":" + std::to_string(lineno) + ": non-positive weight");
    mesh.nodes.emplace_back(v[0], v[1], v[2]);
    mesh.normals.push_back(n.normalized());
    mesh.weights.push_back(v[6]);
  }
  if (mesh.nodes.empty()) throw LoadError(path + ": no nodes");
  return mesh;
}

Chart flat_chart() {
  return {[](const Vec2&) { return 0.0; }, [](const Vec2&) { return Vec2(0.0, 0.0); }};
}

Chart linear_chart(double c1, double c2) {
  return {[=](const Vec2& y) { return c1 * y.x() + c2 * y.y(); }, [=](const Vec2&) { return Vec2(c1, c2); }};
}

Chart cubic_chart(const std::array<double, 10>& c) {
  auto value = [c](const Vec2& p) {
    const double x = p.x(), y = p.y();
    return c[0] + c[1] * x + c[2] * y + c[3] * x * x + c[4] * x * y + c[5] * y * y + c[6] * x * x * x +
           c[7] * x * x * y + c[8] * x * y * y + c[9] * y * y * y;
  };
  auto gradient = [c](const Vec2& p) {
    const double x = p.x(), y = p.y();
    return Vec2(c[1] + 2 * c[3] * x + c[4] * y + 3 * c[6] * x * x + 2 * c[7] * x * y + c[8] * y * y,
                c[2] + c[4] * x + 2 * c[5] * y + c[7] * x * x + 2 * c[8] * x * y + 3 * c[9] * y * y);
  };
  return {value, gradient};
}

Vec2 chart_gradient(const Chart& chi, const Vec2& y) {
  if (chi.gradient) return chi.gradient(y);
  const double h = kChartStep;
  const Vec2 e1(h, 0.0), e2(0.0, h);
  return Vec2((chi.value(y + e1) - chi.value(y - e1)) / (2 * h), (chi.value(y + e2) - chi.value(y - e2)) / (2 * h));
}

ChartMetric chart_metric(const Chart& chi, const Vec2& y) {
  ChartMetric out;
  const Vec2 d = chart_gradient(chi, y);
  out.gradChi = d;
  out.G = Eigen::Matrix2d::Identity() + d * d.transpose();
  out.g = out.G.determinant();
  out.Ginv = out.G.inverse();
  // Rotation taking e2 to the gradient direction, then the g^{-1/2} stretch.
  // At d2 = 0 the sign of d2 is taken as +1; at d = 0 the rotation is the identity.
  const double gn = d.norm();
  double a = 1.0, b = 0.0;
  if (gn > 0.0) {
    const double s = d.y() < 0.0 ? -1.0 : 1.0;
    a = std::abs(d.y()) / gn;
    b = s * d.x() / gn;
  }
  Eigen::Matrix2d rot;
  rot << a, b, -b, a;
  out.Q = rot * Eigen::Vector2d(1.0, 1.0 / std::sqrt(out.g)).asDiagonal();
  return out;
}

Vec3 chart_normal(const Chart& chi, const Vec2& y) {
  const Vec2 d = chart_gradient(chi, y);
  return Vec3(d.x(), d.y(), -1.0) / std::sqrt(1.0 + d.squaredNorm());
}

}  // namespace steklov
