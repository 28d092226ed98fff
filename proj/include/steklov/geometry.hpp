#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "steklov/clifford.hpp"

namespace steklov {

enum class MeshKind { sphere, chart_graph, file };

struct SphereInfo {
  double radius;
  int order;  // polar Gauss points; azimuthal points = 2 * order
};

struct SurfaceMesh {
  std::vector<Vec3> nodes;
  std::vector<Vec3> normals;  // outward, unit
  std::vector<double> weights;
  MeshKind kind = MeshKind::file;
  std::optional<SphereInfo> sphere;

  std::size_t size() const { return nodes.size(); }
};

// Gauss-Legendre in cos(theta) times trapezoid in phi, 2 * order^2 nodes.
// Node index = ring * (2 * order) + azimuth.
SurfaceMesh sphere_mesh(double radius, int order);

// One node per line: "x y z nx ny nz w"; '#' starts a comment line.
SurfaceMesh mesh_from_file(const std::string& path);

// Graph chart x3 = chi(x1, x2); the domain lies above the graph.
struct Chart {
  std::function<double(const Vec2&)> value;
  std::function<Vec2(const Vec2&)> gradient;  // empty: central differences
};

Chart flat_chart();
Chart linear_chart(double c1, double c2);
// chi = sum of c[k] * monomial_k, monomials 1, x, y, x^2, xy, y^2, x^3, x^2y, xy^2, y^3.
Chart cubic_chart(const std::array<double, 10>& c);

inline constexpr double kChartStep = 1e-5;

Vec2 chart_gradient(const Chart& chi, const Vec2& y);

struct ChartMetric {
  Eigen::Matrix2d G;
  double g;
  Eigen::Matrix2d Ginv;
  Eigen::Matrix2d Q;
  Vec2 gradChi;
};

ChartMetric chart_metric(const Chart& chi, const Vec2& y);
Vec3 chart_normal(const Chart& chi, const Vec2& y);

}  // namespace steklov
