#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "steklov/errors.hpp"
#include "steklov/geometry.hpp"

using namespace steklov;

namespace {

constexpr double kPi = std::numbers::pi;

double total_weight(const SurfaceMesh& mesh) {
  double s = 0.0;
  for (double w : mesh.weights) s += w;
  return s;
}

std::string write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

void check_relations(const ChartMetric& cm, double tol) {
  const Eigen::Matrix2d Q = cm.Q;
  CHECK((Q.transpose() * cm.G * Q - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < tol);
  CHECK((Q * Q.transpose() - cm.Ginv).cwiseAbs().maxCoeff() < tol);
  CHECK(std::abs(Q.determinant() - 1.0 / std::sqrt(cm.g)) < tol);
}

}  // namespace

TEST_CASE("sphere mesh weights and normals") {
  const SurfaceMesh m1 = sphere_mesh(1.0, 8);
  CHECK(m1.size() == 128);
  CHECK(std::abs(total_weight(m1) - 4 * kPi) < 1e-10);
  CHECK(std::abs(total_weight(sphere_mesh(2.0, 8)) - 16 * kPi) < 1e-9);

  const SurfaceMesh m16 = sphere_mesh(1.0, 16);
  Vec3 flux = Vec3::Zero();
  for (std::size_t i = 0; i < m16.size(); ++i) {
    flux += m16.weights[i] * m16.normals[i];
    CHECK(std::abs(m16.normals[i].norm() - 1.0) < 1e-12);
  }
  CHECK(flux.norm() < 1e-10);
  CHECK_THROWS_AS(sphere_mesh(1.0, 2), ArgumentError);
  CHECK_THROWS_AS(sphere_mesh(1.0, 7), ArgumentError);
  CHECK_THROWS_AS(sphere_mesh(-1.0, 8), ArgumentError);
}

TEST_CASE("sphere quadrature integrates low-degree polynomials") {
  // x^a y^b z^c with even exponents has a closed-form surface integral; odd ones vanish.
  const int order = 10;
  const SurfaceMesh mesh = sphere_mesh(1.0, order);
  auto exact = [](int a, int b, int c) {
    if (a % 2 || b % 2 || c % 2) return 0.0;
    auto g = [](double s) { return std::tgamma(s); };
    const double ba = (a + 1) / 2.0, bb = (b + 1) / 2.0, bc = (c + 1) / 2.0;
    return 2.0 * g(ba) * g(bb) * g(bc) / g(ba + bb + bc);
  };
  double worst = 0.0;
  for (int a = 0; a <= order - 2; ++a) {
    for (int b = 0; a + b <= order - 2; ++b) {
      for (int c = 0; a + b + c <= order - 2; ++c) {
        double s = 0.0;
        for (std::size_t i = 0; i < mesh.size(); ++i) {
          const Vec3& x = mesh.nodes[i];
          s += mesh.weights[i] * std::pow(x.x(), a) * std::pow(x.y(), b) * std::pow(x.z(), c);
        }
        worst = std::max(worst, std::abs(s - exact(a, b, c)));
      }
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("chart metric examples") {
  const ChartMetric flat = chart_metric(flat_chart(), Vec2(0.3, -0.2));
  CHECK((flat.G - Eigen::Matrix2d::Identity()).norm() == 0.0);
  CHECK(flat.g == 1.0);
  CHECK((flat.Q - Eigen::Matrix2d::Identity()).norm() == 0.0);

  const ChartMetric lin = chart_metric(linear_chart(1.0, 0.0), Vec2(0.0, 0.0));
  Eigen::Matrix2d G;
  G << 2, 0, 0, 1;
  CHECK((lin.G - G).norm() < 1e-15);
  CHECK(std::abs(lin.g - 2.0) < 1e-15);
  check_relations(lin, 1e-12);
}

TEST_CASE("metric relations on random cubic charts") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int s = 0; s < 1000; ++s) {
    std::array<double, 10> c;
    for (double& x : c) x = u(rng);
    const Chart chi = cubic_chart(c);
    const Vec2 y(u(rng), u(rng));
    check_relations(chart_metric(chi, y), 1e-10);
  }
}

TEST_CASE("finite-difference gradient fallback") {
  std::array<double, 10> c{0.1, 0.2, -0.3, 0.4, 0.5, -0.6, 0.7, 0.1, -0.2, 0.3};
  const Chart analytic = cubic_chart(c);
  const Chart numeric{analytic.value, {}};
  const Vec2 y(0.4, -0.7);
  CHECK((chart_gradient(analytic, y) - chart_gradient(numeric, y)).norm() < 1e-9);
  check_relations(chart_metric(numeric, y), 1e-10);
}

TEST_CASE("chart normal") {
  CHECK((chart_normal(flat_chart(), Vec2(1, 2)) - Vec3(0, 0, -1)).norm() == 0.0);
  CHECK((chart_normal(linear_chart(1, 0), Vec2(0, 0)) - Vec3(1, 0, -1) / std::sqrt(2.0)).norm() < 1e-15);
  std::array<double, 10> c{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  CHECK(std::abs(chart_normal(cubic_chart(c), Vec2(0.5, 0.5)).norm() - 1.0) < 1e-15);
}

TEST_CASE("mesh file loading") {
  const std::string good = write_temp("steklov_good.txt",
                                      "# six nodes of the octahedron\n"
                                      "1 0 0 1 0 0 2.0943951\n-1 0 0 -1 0 0 2.0943951\n"
                                      "0 1 0 0 1 0 2.0943951\n0 -1 0 0 -1 0 2.0943951\n"
                                      "0 0 1 0 0 1 2.0943951\n0 0 -1 0 0 -1 2.0943951\n");
  CHECK(mesh_from_file(good).size() == 6);

  const std::string neg = write_temp("steklov_neg.txt", "1 0 0 1 0 0 1\n0 1 0 0 1 0 1\n0 0 1 0 0 1 -1\n");
  try {
    mesh_from_file(neg);
    FAIL("expected load error");
  } catch (const LoadError& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }

  const std::string normal = write_temp("steklov_normal.txt", "0 0 1 0 0 2 1\n");
  try {
    mesh_from_file(normal);
    FAIL("expected load error");
  } catch (const LoadError& e) {
    CHECK(std::string(e.what()).find("non-unit normal") != std::string::npos);
  }
  CHECK_THROWS_AS(mesh_from_file(write_temp("steklov_bad.txt", "1 2 three\n")), LoadError);
  CHECK_THROWS_AS(mesh_from_file("/nonexistent/mesh.txt"), LoadError);
}
