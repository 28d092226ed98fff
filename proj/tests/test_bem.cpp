#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "steklov/bem.hpp"
#include "steklov/errors.hpp"
#include "steklov/harmonics.hpp"
#include "steklov/sphere_spectral.hpp"

using namespace steklov;

namespace {

constexpr double kPi = std::numbers::pi;

// Random spinor field of spherical-harmonic degree <= deg.
Eigen::VectorXcd smooth_field(const SurfaceMesh& mesh, int deg, std::mt19937_64& rng) {
  const SphereTransform sht(mesh);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(sh_count(sht.degree()), 4);
  for (int i = 0; i < sh_count(deg); ++i) {
    for (int a = 0; a < 4; ++a) c(i, a) = cplx(g(rng), g(rng));
  }
  return sht.synthesize_spinor(c);
}

Eigen::VectorXcd project(const SurfaceMesh& mesh, Side side, const Eigen::VectorXcd& v) {
  return nodewise_apply(mesh, [&](std::size_t i) { return projector(mesh.normals[i], side); }, v);
}

Eigen::MatrixXcd alpha_n(const SurfaceMesh& mesh) {
  return nodewise_matrix(mesh, [&](std::size_t i) { return alpha_dot(mesh.normals[i]); });
}

double rel(const SurfaceMesh& mesh, const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return l2_norm(mesh, a - b) / l2_norm(mesh, b);
}

std::string temp_path(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST_CASE("cauchy operator is weighted-hermitian at real z and conjugates with z") {
  const MeshRef mesh = share(sphere_mesh(1.0, 8));
  const BoundaryOperator c = assemble_cauchy(mesh, make_params(1.0, 0.0));
  CHECK(c.label == OperatorLabel::cauchy);
  CHECK((c.matrix - l2_adjoint(*mesh, c.matrix)).norm() / c.matrix.norm() < 1e-12);

  const cplx z(0.3, 0.4);
  const Eigen::MatrixXcd cz = assemble_cauchy(mesh, make_params(1.0, z)).matrix;
  const Eigen::MatrixXcd czbar = assemble_cauchy(mesh, make_params(1.0, std::conj(z))).matrix;
  CHECK((l2_adjoint(*mesh, cz) - czbar).norm() / cz.norm() < 1e-12);
}

TEST_CASE("(alpha.n C)^2 = -1/4 on resolved fields") {
  const MeshRef mesh = share(sphere_mesh(1.0, 12));
  const Eigen::MatrixXcd d = alpha_n(*mesh) * assemble_cauchy(mesh, make_params(1.0, 0.0)).matrix;
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int s = 0; s < 5; ++s) {
    const Eigen::VectorXcd f = smooth_field(*mesh, 5, rng);
    worst = std::max(worst, l2_norm(*mesh, d * (d * f) + 0.25 * f) / l2_norm(*mesh, f));
  }
  CHECK(worst < 1e-10);
  // nodal modes beyond the resolved band do not satisfy the identity; the full norm is reported
  const Eigen::MatrixXcd e = d * d + 0.25 * Eigen::MatrixXcd::Identity(d.rows(), d.cols());
  MESSAGE("full L2 norm of (alpha.n C)^2 + 1/4 at order 12: " << l2_operator_norm(*mesh, e));
}

TEST_CASE("lambda is C + beta/2 and invertible") {
  const MeshRef mesh = share(sphere_mesh(1.0, 8));
  const KernelParams p = make_params(1.0, 0.0);
  const BoundaryOperator c = assemble_cauchy(mesh, p);
  const BoundaryOperator l = assemble_lambda(mesh, p);
  CHECK(l.label == OperatorLabel::lambda);
  const Eigen::MatrixXcd half_beta = nodewise_matrix(*mesh, [](std::size_t) -> SpinorMatrix { return 0.5 * dirac_beta(); });
  CHECK((l.matrix - c.matrix - half_beta).cwiseAbs().maxCoeff() < 1e-15);

  Eigen::VectorXd w(l.dim());
  for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = std::sqrt(mesh->weights[i / 4]);
  const Eigen::MatrixXcd scaled = w.asDiagonal() * l.matrix * w.cwiseInverse().asDiagonal();
  const Eigen::VectorXd sv = Eigen::BDCSVD<Eigen::MatrixXcd>(scaled).singularValues();
  CHECK(sv[sv.size() - 1] > 0.05);
}

TEST_CASE("lambda squared identity: Lambda^2 = 1/4 + C^2 + m S") {
  const MeshRef mesh = share(sphere_mesh(1.0, 12));
  const KernelParams p = make_params(1.0, 0.0);
  const Eigen::MatrixXcd c = assemble_cauchy(mesh, p).matrix;
  const Eigen::MatrixXcd l = assemble_lambda(mesh, p).matrix;
  const Eigen::MatrixXcd s = assemble_single_layer(mesh, p).matrix;
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Eigen::VectorXcd f = smooth_field(*mesh, 4, rng);
    const Eigen::VectorXcd rhs = 0.25 * f + c * (c * f) + p.m * (s * f);
    worst = std::max(worst, l2_norm(*mesh, l * (l * f) - rhs) / l2_norm(*mesh, f));
  }
  CHECK(worst < 1e-2);
}

TEST_CASE("single layer on the sphere") {
  const KernelParams p = make_params(1.0, 0.0);
  for (int order : {8, 16}) {
    CAPTURE(order);
    const MeshRef mesh = share(sphere_mesh(1.0, order));
    const Eigen::MatrixXcd s = assemble_single_layer(mesh, p).matrix;
    // scalar kernel times I4
    CHECK(s(0, 1) == cplx(0.0));
    CHECK(s(4, 1) == cplx(0.0));
    CHECK(s(4, 0) == s(5, 1));
    // positive in the weighted inner product
    Eigen::VectorXd w(s.rows());
    for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = std::sqrt(mesh->weights[i / 4]);
    const Eigen::MatrixXcd sym = w.asDiagonal() * s * w.cwiseInverse().asDiagonal();
    CHECK((sym - sym.adjoint()).norm() / sym.norm() < 1e-12);
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(0.5 * (sym + sym.adjoint())).eigenvalues();
    CHECK(ev[0] > 0.0);
    // constant density: S 1 = int e^{-|x-y|}/(4 pi |x-y|) dsigma(y) = (1 - e^{-2})/2 on the unit sphere
    const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(s.rows());
    const Eigen::VectorXcd s1 = s * ones;
    CHECK(std::abs(s1[0] - (1.0 - std::exp(-2.0)) / 2.0) < 1e-10);
    CHECK(std::abs(s1[s1.size() - 1] - (1.0 - std::exp(-2.0)) / 2.0) < 1e-10);
  }
  const auto eig = single_layer_eigenvalues(1.0, 5, p);
  CHECK(eig[0].real() == doctest::Approx(0.43233235838169365).epsilon(1e-10));
}

TEST_CASE("layer potential: decay, Dirac equation and jump relations") {
  const MeshRef mesh = share(sphere_mesh(1.0, 12));
  const KernelParams p = make_params(1.0, 0.0);
  std::mt19937_64 rng(5);
  const TraceField g{smooth_field(*mesh, 2, rng), mesh};

  // e^{-r} decay at m = 1, z = 0
  const double far1 = potential_eval(mesh, p, g, Vec3(0, 0, 6)).norm();
  const double far2 = potential_eval(mesh, p, g, Vec3(0, 0, 12)).norm();
  CHECK(far2 / far1 < std::exp(-5.0));

  // (D_m - z) Phi g = 0 off the surface
  for (const Vec3& x : {Vec3(0.1, 0.2, 0.3), Vec3(0.9, 0.9, 0.9), Vec3(0.0, 0.3, -0.7)}) {
    const double h = 1e-4;
    Spinor r = p.m * dirac_beta() * potential_eval(mesh, p, g, x) - p.z * potential_eval(mesh, p, g, x);
    for (int j = 0; j < 3; ++j) {
      Vec3 e = Vec3::Zero();
      e[j] = h;
      r += -I_unit * dirac_alpha(j + 1) * (potential_eval(mesh, p, g, x + e) - potential_eval(mesh, p, g, x - e)) / (2 * h);
    }
    CHECK(r.norm() < 1e-5 * std::max(1.0, potential_eval(mesh, p, g, x).norm()));
  }

  // limits: interior -i/2 alpha.n g + C g, exterior +i/2 alpha.n g + C g; the one-sided value at
  // distance d differs from the limit by O(d), so halving d halves the error
  const Eigen::VectorXcd cg = assemble_cauchy(mesh, p).matrix * g.values;
  std::vector<Vec3> inner1, inner2, outer1, outer2;
  const double d = 1e-2;
  for (const Vec3& n : mesh->normals) {
    inner1.push_back((1 - d) * n);
    inner2.push_back((1 - d / 2) * n);
    outer1.push_back((1 + d) * n);
    outer2.push_back((1 + d / 2) * n);
  }
  const Eigen::VectorXcd an_g = alpha_n(*mesh) * g.values;
  const Eigen::VectorXcd lim_in = -0.5 * I_unit * an_g + cg, lim_out = 0.5 * I_unit * an_g + cg;
  auto err = [&](const std::vector<Vec3>& pts, const Eigen::VectorXcd& lim) {
    const auto v = potential_eval_many(mesh, p, g, pts);
    Eigen::VectorXcd s(lim.size());
    for (std::size_t i = 0; i < v.size(); ++i) s.segment<4>(4 * static_cast<Eigen::Index>(i)) = v[i];
    return rel(*mesh, s, lim);
  };
  const double ein1 = err(inner1, lim_in), ein2 = err(inner2, lim_in);
  const double eout1 = err(outer1, lim_out), eout2 = err(outer2, lim_out);
  MESSAGE("jump errors at d = 1e-2: interior " << ein1 << ", exterior " << eout1);
  CHECK(ein1 < 2e-2);
  CHECK(ein1 / ein2 == doctest::Approx(2.0).epsilon(0.1));
  CHECK(eout1 / eout2 == doctest::Approx(2.0).epsilon(0.1));
  CHECK_THROWS_AS(potential_eval(mesh, p, g, mesh->nodes[0]), DomainError);
}

TEST_CASE("invert_dense") {
  const MeshRef mesh = share(sphere_mesh(1.0, 8));
  const Eigen::Index n4 = 4 * static_cast<Eigen::Index>(mesh->size());
  const Inverse id = invert_dense({Eigen::MatrixXcd::Identity(n4, n4), mesh, OperatorLabel::composite, 1.0, 0.0});
  CHECK(id.residual == 0.0);
  const Inverse l = invert_dense(assemble_lambda(mesh, make_params(1.0, 0.0)));
  CHECK(l.residual < 1e-10);

  Eigen::MatrixXcd singular = Eigen::MatrixXcd::Identity(n4, n4);
  singular(3, 3) = 0.0;
  try {
    invert_dense({singular, mesh, OperatorLabel::lambda, 1.0, 0.0});
    FAIL("expected an inversion error");
  } catch (const InversionError& e) {
    CHECK(e.sigma_min < 1e-12);
    CHECK(std::string(e.what()).find("lambda") != std::string::npos);
  }
  CHECK_THROWS_AS(invert_dense({Eigen::MatrixXcd::Zero(3, 4), mesh, OperatorLabel::composite, 1.0, 0.0}),
                  ArgumentError);
}

TEST_CASE("Poincare-Steklov maps: ranges, bounds and agreement with the exact spherical maps") {
  const MeshRef mesh = share(sphere_mesh(1.0, 12));
  const BoundaryOperator ai = ps_interior(mesh, make_params(1.0, 0.0));
  const BoundaryOperator ae = ps_exterior(mesh, 21.0, 0.0);
  CHECK(ai.label == OperatorLabel::ps_interior);
  CHECK(ae.label == OperatorLabel::ps_exterior);
  const Eigen::MatrixXcd pm = nodewise_matrix(*mesh, [&](std::size_t i) { return projector(mesh->normals[i], Side::minus); });
  const Eigen::MatrixXcd pp = nodewise_matrix(*mesh, [&](std::size_t i) { return projector(mesh->normals[i], Side::plus); });
  CHECK((pm * ai.matrix).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((ai.matrix * pp).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((pp * ae.matrix).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((ae.matrix * pm).cwiseAbs().maxCoeff() < 1e-10);

  std::mt19937_64 rng(3);
  const ChannelOperator exact_i = ps_interior_channels(1.0, 11, 1.0, 0.0);
  const ChannelOperator exact_e = ps_exterior_channels(1.0, 11, 21.0, 0.0);
  for (int deg : {1, 4, 8}) {
    CAPTURE(deg);
    const Eigen::VectorXcd g = project(*mesh, Side::minus, smooth_field(*mesh, deg, rng));
    const Eigen::VectorXcd h = project(*mesh, Side::plus, smooth_field(*mesh, deg, rng));
    CHECK(l2_norm(*mesh, ai.matrix * g) <= 1.1 * l2_norm(*mesh, g));
    CHECK(rel(*mesh, ai.matrix * g, apply_channels(exact_i, *mesh, g)) < 1e-10);
    CHECK(rel(*mesh, ae.matrix * h, apply_channels(exact_e, *mesh, h)) < 1e-10);
  }
}

TEST_CASE("interior PS map equals the P+ trace of the interior solution") {
  const MeshRef mesh = share(sphere_mesh(1.0, 12));
  const KernelParams p = make_params(1.0, 0.0);
  const Eigen::MatrixXcd linv = invert_dense(assemble_lambda(mesh, p)).op.matrix;
  const Eigen::MatrixXcd ai = ps_interior(mesh, p).matrix;
  std::mt19937_64 rng(9);
  const Eigen::VectorXcd g = project(*mesh, Side::minus, smooth_field(*mesh, 1, rng));
  // u = Phi Lambda^-1 g solves the interior problem with P- trace g
  const TraceField density{linv * g, mesh};
  const Eigen::VectorXcd ag = ai * g;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < mesh->size(); i += 5) {
    const Vec3 n = mesh->normals[i];
    const Spinor u = potential_eval(mesh, p, density, (1 - 1e-2) * n);
    const Spinor target = g.segment<4>(4 * static_cast<Eigen::Index>(i)) + ag.segment<4>(4 * static_cast<Eigen::Index>(i));
    num += (u - target).squaredNorm();
    den += target.squaredNorm();
  }
  CHECK(std::sqrt(num / den) < 2e-2);
}

TEST_CASE("sobolev_weight") {
  const MeshRef mesh = share(sphere_mesh(1.0, 8));
  std::mt19937_64 rng(2);
  const TraceField f{smooth_field(*mesh, 3, rng), mesh};
  CHECK(sobolev_weight(f, 0.0).values == f.values);
  const TraceField back = sobolev_weight(sobolev_weight(f, 1.0), -1.0);
  CHECK(rel(*mesh, back.values, f.values) < 1e-12);

  // degree-1 field scales by (1 + 2)^{1/2}
  Eigen::VectorXcd y1(4 * static_cast<Eigen::Index>(mesh->size()));
  for (std::size_t i = 0; i < mesh->size(); ++i) y1.segment<4>(4 * static_cast<Eigen::Index>(i)).setConstant(mesh->normals[i].z());
  const TraceField w = sobolev_weight({y1, mesh}, 1.0);
  CHECK(rel(*mesh, w.values, std::sqrt(3.0) * y1) < 1e-12);
  CHECK(rel(*mesh, sobolev_matrix(*mesh, 1.0) * f.values, sobolev_weight(f, 1.0).values) < 1e-12);

  SurfaceMesh flat = *mesh;
  flat.kind = MeshKind::file;
  flat.sphere.reset();
  CHECK_THROWS_AS(sobolev_weight({f.values, share(flat)}, 1.0), CapabilityError);
}

TEST_CASE("operator dump round trip") {
  const MeshRef mesh = share(sphere_mesh(1.0, 4));
  const BoundaryOperator op = assemble_cauchy(mesh, make_params(2.0, cplx(0.1, -0.2)));
  const std::string path = temp_path("steklov_op.sdop");
  write_operator(op, path);
  const BoundaryOperator back = read_operator(path, mesh);
  CHECK(back.label == OperatorLabel::cauchy);
  CHECK(back.mass == 2.0);
  CHECK(back.z == cplx(0.1, -0.2));
  CHECK(back.matrix == op.matrix);

  std::ofstream(temp_path("steklov_bad.sdop")) << "XXXXX";
  CHECK_THROWS_AS(read_operator(temp_path("steklov_bad.sdop"), mesh), LoadError);
}

TEST_CASE("general meshes use plain Nystrom assembly") {
  SurfaceMesh m = sphere_mesh(1.0, 6);
  m.kind = MeshKind::file;
  m.sphere.reset();
  const MeshRef mesh = share(m);
  const KernelParams p = make_params(1.0, 0.0);
  const BoundaryOperator c = assemble_cauchy(mesh, p);
  CHECK(c.matrix.allFinite());
  CHECK(assemble_single_layer(mesh, p).matrix.allFinite());
  const TraceField g{Eigen::VectorXcd::Ones(c.dim()), mesh};
  CHECK(potential_eval_checked(mesh, p, g, 1.001 * m.nodes[0]).degraded);
  CHECK_FALSE(potential_eval_checked(mesh, p, g, Vec3(0, 0, 0.1)).degraded);

  SurfaceMesh dup = m;
  dup.nodes[1] = dup.nodes[0];
  CHECK_THROWS_AS(assemble_cauchy(share(dup), p), AssemblyError);
  CHECK_THROWS_AS(sobolev_weight(g, 1.0), CapabilityError);
}
