#include "steklov/bem.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>

#include "steklov/errors.hpp"
#include "steklov/harmonics.hpp"
#include "steklov/parallel.hpp"
#include "steklov/quadrature.hpp"
#include "steklov/sphere_assembly.hpp"

namespace steklov {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_sphere(const SurfaceMesh& mesh) { return mesh.kind == MeshKind::sphere && mesh.sphere.has_value(); }

// (e^{i k a} - 1) / (i k), continuous at k = 0.
cplx expm1_over(cplx k, double a) {
  const cplx x = I_unit * k * a;
  if (std::abs(x) < 1e-4) return a * (1.0 + x / 2.0 + x * x / 6.0);
  return (std::exp(x) - 1.0) / (I_unit * k);
}

void check_distinct(const SurfaceMesh& mesh) {
  double scale = 0.0;
  for (const Vec3& x : mesh.nodes) scale = std::max(scale, x.norm());
  const double tol = 1e-12 * std::max(1.0, scale);
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    for (std::size_t j = i + 1; j < mesh.size(); ++j) {
      if ((mesh.nodes[i] - mesh.nodes[j]).norm() <= tol) {
        throw AssemblyError("duplicate mesh nodes " + std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }
}

void require_mesh(const MeshRef& mesh) {
  if (!mesh || mesh->size() == 0) throw ArgumentError("empty mesh");
}

Eigen::MatrixXcd nystrom_cauchy(const SurfaceMesh& mesh, const KernelParams& p) {
  check_distinct(mesh);
  const Eigen::Index n = static_cast<Eigen::Index>(mesh.size());
  Eigen::MatrixXcd a(4 * n, 4 * n);
  const SpinorMatrix zmb = p.z * identity4() + p.m * dirac_beta();
  parallel_for(static_cast<int>(n), [&](int i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) {
        // flat disk of equal area: the odd part integrates to zero, the rest to (z + m beta)(e^{ik rho} - 1)/(2ik)
        const double rho = std::sqrt(mesh.weights[i] / kPi);
        a.block<4, 4>(4 * i, 4 * j) = (0.5 * expm1_over(p.k, rho)) * zmb;
      } else {
        a.block<4, 4>(4 * i, 4 * j) = mesh.weights[j] * phi_z(mesh.nodes[i] - mesh.nodes[j], p);
      }
    }
  });
  return a;
}

Eigen::MatrixXcd scalar_to_spinor(const Eigen::MatrixXcd& s) {
  const Eigen::Index n = s.rows();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(4 * n, 4 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (int c = 0; c < 4; ++c) a(4 * i + c, 4 * j + c) = s(i, j);
    }
  }
  return a;
}

void check_field(const SurfaceMesh& mesh, const Eigen::VectorXcd& v) {
  if (v.size() != 4 * static_cast<Eigen::Index>(mesh.size())) throw ArgumentError("field size does not match mesh");
}

}  // namespace

std::string to_string(OperatorLabel label) {
  switch (label) {
    case OperatorLabel::cauchy:
      return "cauchy";
    case OperatorLabel::lambda:
      return "lambda";
    case OperatorLabel::single_layer:
      return "single_layer";
    case OperatorLabel::ps_interior:
      return "ps_interior";
    case OperatorLabel::ps_exterior:
      return "ps_exterior";
    case OperatorLabel::composite:
      return "composite";
  }
  return "composite";
}

namespace {

// Nodal band projector H_ij = w_j sum_{l <= order-1} (2l+1)/(4 pi R^2) P_l(n_i . n_j).
Eigen::MatrixXd band_projector(const SurfaceMesh& m) {
  const Eigen::Index n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd h(n, n);
  parallel_for(static_cast<int>(n), [&](int i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      h(i, j) = m.weights[j] * band_kernel(m.sphere->order - 1, m.normals[i].dot(m.normals[j]), m.sphere->radius);
    }
  });
  return h;
}

}  // namespace

SpinorMatrix cauchy_complement_block(double radius, int order, const KernelParams& p) {
  // half-space symbol (alpha.xi + m beta + z) / (2 mu) at |xi|^2 = L(L+1)/R^2, L = order,
  // with the directional alpha.xi term averaged out
  const double xi2 = order * (order + 1.0) / (radius * radius);
  const cplx mu = std::sqrt(cplx(xi2 + p.m * p.m) - p.z * p.z);
  return (p.m * dirac_beta() + p.z * identity4()) / (2.0 * mu);
}

namespace {

Eigen::MatrixXcd cauchy_complement(const SurfaceMesh& m, const KernelParams& p) {
  const SpinorMatrix c = cauchy_complement_block(m.sphere->radius, m.sphere->order, p);
  const Eigen::MatrixXd h = band_projector(m);
  const Eigen::Index n = h.rows();
  Eigen::MatrixXcd out(4 * n, 4 * n);
  parallel_for(static_cast<int>(n), [&](int i) {
    for (Eigen::Index j = 0; j < n; ++j) out.block<4, 4>(4 * i, 4 * j) = ((i == j ? 1.0 : 0.0) - h(i, j)) * c;
  });
  return out;
}

}  // namespace

BoundaryOperator assemble_cauchy(const MeshRef& mesh, const KernelParams& p) {
  require_mesh(mesh);
  BoundaryOperator op{{}, mesh, OperatorLabel::cauchy, p.m, p.z};
  if (is_sphere(*mesh)) {
    auto kernel_of = [&p](const Vec3& target) -> sphere::SourceKernel {
      return [target, &p](const Vec3& y) { return phi_z(target - y, p); };
    };
    const auto rows = sphere::ring_rows(*mesh, 1.0, kernel_of, sphere::kernel_length(p));
    op.matrix = sphere::expand_rows(*mesh, sphere::project_rows(*mesh, rows));
    op.matrix += cauchy_complement(*mesh, p);
  } else {
    op.matrix = nystrom_cauchy(*mesh, p);
  }
  return op;
}

BoundaryOperator assemble_lambda(const MeshRef& mesh, const KernelParams& p) {
  BoundaryOperator op = assemble_cauchy(mesh, p);
  const SpinorMatrix half_beta = 0.5 * dirac_beta();
  for (Eigen::Index i = 0; i < op.dim() / 4; ++i) op.matrix.block<4, 4>(4 * i, 4 * i) += half_beta;
  op.label = OperatorLabel::lambda;
  return op;
}

std::vector<cplx> single_layer_eigenvalues(double radius, int lmax, const KernelParams& p) {
  // S Y_lm = s_l Y_lm with s_l = 2 pi R^2 int_0^pi G(2R sin(t/2)) P_l(cos t) sin t dt;
  // G(2R sin(t/2)) sin t = e^{2ikR sin(t/2)} cos(t/2) / (4 pi R) is smooth in t.
  const Rule1D rule = graded_rule(0.5 / std::max(1.0, std::abs(p.k) * radius), kPi / (lmax + 1), kPi, 12,
                                  2 * lmax + 24);
  std::vector<cplx> s(lmax + 1, 0.0);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double t = rule.nodes[q];
    const cplx g = std::exp(2.0 * I_unit * p.k * radius * std::sin(t / 2)) * std::cos(t / 2) / (4 * kPi * radius);
    const auto pl = legendre_series(lmax, std::cos(t));
    for (int l = 0; l <= lmax; ++l) s[l] += 2 * kPi * radius * radius * rule.weights[q] * g * pl[l];
  }
  return s;
}

BoundaryOperator assemble_single_layer(const MeshRef& mesh, const KernelParams& p) {
  require_mesh(mesh);
  const SurfaceMesh& m = *mesh;
  const Eigen::Index n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXcd s(n, n);
  if (is_sphere(m)) {
    // spectral on the resolved band; the unresolved complement gets the band-edge eigenvalue
    const double radius = m.sphere->radius;
    const int lmax = m.sphere->order - 1;
    const std::vector<cplx> eig = single_layer_eigenvalues(radius, lmax + 1, p);
    parallel_for(static_cast<int>(n), [&](int i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto pl = legendre_series(lmax, m.normals[i].dot(m.normals[j]));
        cplx band = 0.0;
        double proj = 0.0;
        for (int l = 0; l <= lmax; ++l) {
          const double c = (2 * l + 1) / (4 * kPi * radius * radius) * pl[l];
          band += eig[l] * c;
          proj += c;
        }
        s(i, j) = m.weights[j] * (band - eig[lmax + 1] * proj) + (i == j ? eig[lmax + 1] : cplx(0.0));
      }
    });
  } else {
    check_distinct(m);
    parallel_for(static_cast<int>(n), [&](int i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        s(i, j) = j == i ? 0.5 * expm1_over(p.k, std::sqrt(m.weights[i] / kPi))
                         : m.weights[j] * single_layer_kernel(m.nodes[i] - m.nodes[j], p);
      }
    });
  }
  return {scalar_to_spinor(s), mesh, OperatorLabel::single_layer, p.m, p.z};
}

namespace {

PotentialValue potential_at(const SurfaceMesh& m, const KernelParams& p, const TraceField& density,
                            const SphereTransform* sht, const Eigen::MatrixXcd& coeffs, const Vec3& x) {
  PotentialValue out{Spinor::Zero(), false};
  if (sht) {
    const double radius = m.sphere->radius;
    const double r = x.norm();
    const double gap = std::abs(r - radius);
    if (gap == 0.0) throw DomainError("potential evaluated on the surface");
    if (r >= 0.5 * radius && r <= 2.0 * radius) {
      const double first = std::min(gap / radius, sphere::kernel_length(p));
      const sphere::PolarRule rule = sphere::polar_rule(radius, m.sphere->order, x / r, first);
      for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const Spinor g = evaluate_spinor_expansion(coeffs, sht->degree(), rule.points[q]);
        out.value += rule.weights[q] * (phi_z(x - rule.points[q], p) * g);
      }
      return out;
    }
  }
  double spacing = 0.0, nearest = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m.size(); ++j) {
    const Vec3 d = x - m.nodes[j];
    const double dn = d.norm();
    if (dn == 0.0) throw DomainError("potential evaluated at a mesh node");
    nearest = std::min(nearest, dn);
    spacing = std::max(spacing, std::sqrt(m.weights[j]));
    out.value += m.weights[j] * (phi_z(d, p) * density.at(j));
  }
  out.degraded = !sht && nearest < spacing;
  return out;
}

}  // namespace

PotentialValue potential_eval_checked(const MeshRef& mesh, const KernelParams& p, const TraceField& density,
                                      const Vec3& x) {
  require_mesh(mesh);
  const SurfaceMesh& m = *mesh;
  check_field(m, density.values);
  if (!is_sphere(m)) return potential_at(m, p, density, nullptr, {}, x);
  const SphereTransform sht(m);
  return potential_at(m, p, density, &sht, sht.analyze_spinor(density.values), x);
}

std::vector<Spinor> potential_eval_many(const MeshRef& mesh, const KernelParams& p, const TraceField& density,
                                        const std::vector<Vec3>& points) {
  require_mesh(mesh);
  const SurfaceMesh& m = *mesh;
  check_field(m, density.values);
  std::optional<SphereTransform> sht;
  Eigen::MatrixXcd coeffs;
  if (is_sphere(m)) {
    sht.emplace(m);
    coeffs = sht->analyze_spinor(density.values);
  }
  std::vector<Spinor> out(points.size());
  std::atomic<bool> degraded{false};
  parallel_for(static_cast<int>(points.size()), [&](int i) {
    const PotentialValue v = potential_at(m, p, density, sht ? &*sht : nullptr, coeffs, points[i]);
    out[i] = v.value;
    if (v.degraded) degraded = true;
  });
  if (degraded) std::cerr << "warning: potential evaluated within one node spacing of the surface; quadrature degraded\n";
  return out;
}

Spinor potential_eval(const MeshRef& mesh, const KernelParams& p, const TraceField& density, const Vec3& x) {
  const PotentialValue v = potential_eval_checked(mesh, p, density, x);
  if (v.degraded) {
    std::cerr << "warning: potential evaluated within one node spacing of the surface; quadrature degraded\n";
  }
  return v.value;
}

Inverse invert_dense(const BoundaryOperator& op) {
  const Eigen::MatrixXcd& a = op.matrix;
  if (a.rows() != a.cols() || a.rows() == 0) throw ArgumentError("invert_dense needs a non-empty square matrix");
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  bool suspect = !(lu.rcond() > 1e-10);
  Eigen::MatrixXcd inv;
  if (!suspect) {
    inv = lu.inverse();
    suspect = !inv.allFinite();
  }
  if (suspect) {
    const Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
    const auto& sv = svd.singularValues();
    const double smax = sv[0], smin = sv[sv.size() - 1];
    if (!(smin > 1e-12 * smax)) {
      throw InversionError("operator '" + to_string(op.label) + "' is singular to tolerance: sigma_min = " +
                               std::to_string(smin) + ", sigma_max = " + std::to_string(smax),
                           smin);
    }
    if (inv.size() == 0 || !inv.allFinite()) inv = lu.inverse();
  }
  const double residual =
      (a * inv - Eigen::MatrixXcd::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff();
  return {{std::move(inv), op.mesh, OperatorLabel::composite, op.mass, op.z}, residual};
}

Eigen::MatrixXcd nodewise_left(const SurfaceMesh& mesh, const std::function<SpinorMatrix(std::size_t)>& block,
                               const Eigen::MatrixXcd& a) {
  Eigen::MatrixXcd out(a.rows(), a.cols());
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const Eigen::Index r = 4 * static_cast<Eigen::Index>(i);
    out.middleRows(r, 4).noalias() = block(i) * a.middleRows(r, 4);
  }
  return out;
}

Eigen::MatrixXcd nodewise_right(const SurfaceMesh& mesh, const Eigen::MatrixXcd& a,
                                const std::function<SpinorMatrix(std::size_t)>& block) {
  Eigen::MatrixXcd out(a.rows(), a.cols());
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const Eigen::Index c = 4 * static_cast<Eigen::Index>(i);
    out.middleCols(c, 4).noalias() = a.middleCols(c, 4) * block(i);
  }
  return out;
}

Eigen::VectorXcd nodewise_apply(const SurfaceMesh& mesh, const std::function<SpinorMatrix(std::size_t)>& block,
                                const Eigen::VectorXcd& v) {
  check_field(mesh, v);
  Eigen::VectorXcd out(v.size());
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const Eigen::Index r = 4 * static_cast<Eigen::Index>(i);
    out.segment<4>(r) = block(i) * v.segment<4>(r);
  }
  return out;
}

Eigen::MatrixXcd nodewise_matrix(const SurfaceMesh& mesh, const std::function<SpinorMatrix(std::size_t)>& block) {
  const Eigen::Index n4 = 4 * static_cast<Eigen::Index>(mesh.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n4, n4);
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const Eigen::Index r = 4 * static_cast<Eigen::Index>(i);
    out.block<4, 4>(r, r) = block(i);
  }
  return out;
}

BoundaryOperator ps_interior(const MeshRef& mesh, const KernelParams& p) {
  const Inverse inv = invert_dense(assemble_lambda(mesh, p));
  const SurfaceMesh& m = *mesh;
  const SpinorMatrix beta = dirac_beta();
  Eigen::MatrixXcd a = nodewise_left(
      m, [&](std::size_t i) -> SpinorMatrix { return -projector(m.normals[i], Side::plus) * beta; }, inv.op.matrix);
  a = nodewise_right(m, a, [&](std::size_t i) { return projector(m.normals[i], Side::minus); });
  return {std::move(a), mesh, OperatorLabel::ps_interior, p.m, p.z};
}

BoundaryOperator ps_exterior(const MeshRef& mesh, double mass, cplx z) {
  if (!(mass > 0.0)) throw ArgumentError("ps_exterior needs mass > 0");
  const KernelParams p = make_params(mass, z);
  const Inverse inv = invert_dense(assemble_lambda(mesh, p));
  const SurfaceMesh& m = *mesh;
  const SpinorMatrix beta = dirac_beta();
  Eigen::MatrixXcd a = nodewise_left(
      m, [&](std::size_t i) -> SpinorMatrix { return -projector(m.normals[i], Side::minus) * beta; }, inv.op.matrix);
  a = nodewise_right(m, a, [&](std::size_t i) { return projector(m.normals[i], Side::plus); });
  return {std::move(a), mesh, OperatorLabel::ps_exterior, mass, z};
}

TraceField sobolev_weight(const TraceField& field, double s) {
  if (!field.mesh) throw ArgumentError("field without mesh");
  const SurfaceMesh& m = *field.mesh;
  if (!is_sphere(m)) throw CapabilityError("sobolev_weight supports sphere meshes only");
  check_field(m, field.values);
  if (s == 0.0) return field;
  const SphereTransform sht(m);
  const auto factor = sobolev_factors(m, s);
  // the unresolved complement takes the factor of the first unresolved degree
  const double edge = factor.back();
  Eigen::MatrixXcd coeffs = sht.analyze_spinor(field.values);
  for (int l = 0; l <= sht.degree(); ++l) coeffs.middleRows(l * l, 2 * l + 1) *= factor[l] - edge;
  return {edge * field.values + sht.synthesize_spinor(coeffs), field.mesh};
}

std::vector<double> sobolev_factors(const SurfaceMesh& mesh, double s) {
  if (!is_sphere(mesh)) throw CapabilityError("sobolev weights need a sphere mesh");
  const double r2 = mesh.sphere->radius * mesh.sphere->radius;
  std::vector<double> f(static_cast<std::size_t>(mesh.sphere->order) + 1);
  for (std::size_t l = 0; l < f.size(); ++l) f[l] = std::pow(1.0 + l * (l + 1.0) / r2, s / 2.0);
  return f;
}

Eigen::MatrixXcd sobolev_matrix(const SurfaceMesh& mesh, double s) {
  const auto factor = sobolev_factors(mesh, s);
  const int lmax = mesh.sphere->order - 1;
  const double edge = factor.back();
  const double radius = mesh.sphere->radius;
  const Eigen::Index n = static_cast<Eigen::Index>(mesh.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(4 * n, 4 * n);
  parallel_for(static_cast<int>(n), [&](int i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto pl = legendre_series(lmax, mesh.normals[i].dot(mesh.normals[j]));
      double v = i == j ? edge : 0.0;
      for (int l = 0; l <= lmax; ++l) v += mesh.weights[j] * (factor[l] - edge) * (2 * l + 1) / (4 * kPi * radius * radius) * pl[l];
      for (int c = 0; c < 4; ++c) out(4 * i + c, 4 * j + c) = v;
    }
  });
  return out;
}

double l2_norm(const SurfaceMesh& mesh, const Eigen::VectorXcd& v) {
  check_field(mesh, v);
  double s = 0.0;
  for (std::size_t i = 0; i < mesh.size(); ++i) s += mesh.weights[i] * v.segment<4>(4 * static_cast<Eigen::Index>(i)).squaredNorm();
  return std::sqrt(s);
}

Eigen::MatrixXcd l2_adjoint(const SurfaceMesh& mesh, const Eigen::MatrixXcd& a) {
  const Eigen::Index n4 = a.rows();
  Eigen::VectorXd w(n4);
  for (Eigen::Index i = 0; i < n4; ++i) w[i] = mesh.weights[i / 4];
  return w.cwiseInverse().asDiagonal() * a.adjoint() * w.asDiagonal();
}

double l2_operator_norm(const SurfaceMesh& mesh, const LinearMap& apply, const LinearMap& apply_adjoint) {
  const Eigen::Index n4 = 4 * static_cast<Eigen::Index>(mesh.size());
  // deterministic start vector with components in every direction
  Eigen::VectorXcd v(n4);
  for (Eigen::Index i = 0; i < n4; ++i) v[i] = cplx(std::cos(0.7 * i + 0.3), std::sin(1.3 * i + 0.1));
  v /= l2_norm(mesh, v);
  double estimate = 0.0;
  for (int it = 0; it < 500; ++it) {
    Eigen::VectorXcd u = apply_adjoint(apply(v));
    const double nu = l2_norm(mesh, u);
    if (nu == 0.0) return 0.0;
    const double next = std::sqrt(nu);
    v = u / nu;
    if (it > 5 && std::abs(next - estimate) <= 1e-12 * next) return next;
    estimate = next;
  }
  return estimate;
}

double l2_operator_norm(const SurfaceMesh& mesh, const Eigen::MatrixXcd& a) {
  const Eigen::MatrixXcd adj = l2_adjoint(mesh, a);
  return l2_operator_norm(
      mesh, [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd { return a * v; },
      [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd { return adj * v; });
}

void write_operator(const BoundaryOperator& op, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write " + path);
  static_assert(std::endian::native == std::endian::little, "SDOP1 dumps are written on little-endian hosts");
  out.write("SDOP1", 5);
  const std::int64_t n = op.dim() / 4;
  const std::int32_t label = static_cast<std::int32_t>(op.label);
  const double header[3] = {op.mass, op.z.real(), op.z.imag()};
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(&label), sizeof label);
  out.write(reinterpret_cast<const char*>(header), sizeof header);
  for (Eigen::Index i = 0; i < op.matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < op.matrix.cols(); ++j) {
      const double v[2] = {op.matrix(i, j).real(), op.matrix(i, j).imag()};
      out.write(reinterpret_cast<const char*>(v), sizeof v);
    }
  }
}

BoundaryOperator read_operator(const std::string& path, MeshRef mesh) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open " + path);
  char magic[5];
  in.read(magic, 5);
  if (!in || std::memcmp(magic, "SDOP1", 5) != 0) throw LoadError(path + ": bad magic");
  std::int64_t n = 0;
  std::int32_t label = 0;
  double header[3];
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  in.read(reinterpret_cast<char*>(&label), sizeof label);
  in.read(reinterpret_cast<char*>(header), sizeof header);
  if (!in || n <= 0 || label < 0 || label > static_cast<int>(OperatorLabel::composite)) {
    throw LoadError(path + ": bad header");
  }
  BoundaryOperator op{Eigen::MatrixXcd(4 * n, 4 * n), std::move(mesh), static_cast<OperatorLabel>(label), header[0],
                      cplx(header[1], header[2])};
  for (Eigen::Index i = 0; i < 4 * n; ++i) {
    for (Eigen::Index j = 0; j < 4 * n; ++j) {
      double v[2];
      in.read(reinterpret_cast<char*>(v), sizeof v);
      op.matrix(i, j) = cplx(v[0], v[1]);
    }
  }
  if (!in) throw LoadError(path + ": truncated matrix data");
  return op;
}

}  // namespace steklov
