#include "steklov/sphere_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "steklov/errors.hpp"
#include "steklov/harmonics.hpp"
#include "steklov/quadrature.hpp"
#include "steklov/spectral.hpp"

namespace steklov {

namespace {

// Omega_{kappa, mj} = (a Y_{l, mj - 1/2}, b Y_{l, mj + 1/2}).
struct Coupling {
  int l;
  double a;
  double b;
};

Coupling coupling(int kappa, int mj2) {
  if (kappa < 0) {
    const int l = -kappa - 1;
    const double d = 2.0 * l + 1.0;
    return {l, std::sqrt((l + 0.5 * mj2 + 0.5) / d), std::sqrt((l - 0.5 * mj2 + 0.5) / d)};
  }
  const int l = kappa;
  const double d = 2.0 * l + 1.0;
  return {l, -std::sqrt((l - 0.5 * mj2 + 0.5) / d), std::sqrt((l + 0.5 * mj2 + 0.5) / d)};
}

using Matrix42 = Eigen::Matrix<cplx, 4, 2>;

// beta and alpha.n in the channel basis (U_k1, U_k2, D_k1, D_k2); sigma.n swaps k1 and k2 with a sign.
Eigen::Matrix4cd channel_projector(Side side) {
  Eigen::Matrix2cd x;
  x << 0.0, -1.0, -1.0, 0.0;
  Eigen::Matrix4cd an = Eigen::Matrix4cd::Zero();
  an.block<2, 2>(0, 2) = x;
  an.block<2, 2>(2, 0) = x;
  Eigen::Matrix4cd beta = Eigen::Matrix4cd::Zero();
  beta.diagonal() << 1.0, 1.0, -1.0, -1.0;
  const cplx s = side == Side::plus ? -I_unit : I_unit;
  return 0.5 * (Eigen::Matrix4cd::Identity() + s * beta * an);
}

// Orthonormal basis of the range of a 4x4 rank-2 orthogonal projector.
Matrix42 range_basis(const Eigen::Matrix4cd& p) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(p);
  return es.eigenvectors().rightCols<2>();
}

// out = P_out T (V_in^* P_in T)^-1 V_in^*: traces of the solutions in T with prescribed P_in part.
Eigen::Matrix4cd ps_block(const Matrix42& t, Side in, Side out) {
  const Eigen::Matrix4cd p_in = channel_projector(in), p_out = channel_projector(out);
  const Matrix42 v = range_basis(p_in);
  const Eigen::Matrix2cd gram = v.adjoint() * p_in * t;
  const Eigen::FullPivLU<Eigen::Matrix2cd> lu(gram);
  if (!lu.isInvertible()) throw InversionError("channel PS block is singular (energy at an eigenvalue)", 0.0);
  return p_out * t * lu.inverse() * v.adjoint();
}

template <class Radial>
ChannelOperator channels(double radius, int lmax, Side in, Side out, Radial radial) {
  if (!(radius > 0.0) || lmax < 0) throw ArgumentError("channel operator needs R > 0 and lmax >= 0");
  ChannelOperator op;
  op.radius = radius;
  for (int j2 = 1; j2 <= 2 * lmax + 1; j2 += 2) {
    const int k1 = -(j2 + 1) / 2, k2 = (j2 + 1) / 2;
    const RadialPair s1 = radial(k1), s2 = radial(k2);
    Matrix42 t = Matrix42::Zero();
    t(0, 0) = s1.g;
    t(3, 0) = I_unit * s1.f;
    t(1, 1) = s2.g;
    t(2, 1) = I_unit * s2.f;
    op.blocks.push_back(ps_block(t, in, out));
  }
  return op;
}

double sh_coefficient_norm(int l, int m) { return std::sqrt(static_cast<double>(l * (l + 1) - m * (m + 1))); }

}  // namespace

Spinor2 spinor_harmonic(int kappa, int mj2, const Vec3& dir) {
  if (kappa == 0) throw ArgumentError("kappa must be nonzero");
  if (mj2 % 2 == 0 || std::abs(mj2) > 2 * std::abs(kappa) - 1) throw ArgumentError("m_j out of range");
  const Coupling c = coupling(kappa, mj2);
  const auto y = spherical_harmonics(c.l, dir);
  const int m_up = (mj2 - 1) / 2, m_down = (mj2 + 1) / 2;
  Spinor2 out = Spinor2::Zero();
  if (std::abs(m_up) <= c.l) out[0] = c.a * y[sh_index(c.l, m_up)];
  if (std::abs(m_down) <= c.l) out[1] = c.b * y[sh_index(c.l, m_down)];
  return out;
}

ChannelOperator ps_interior_channels(double radius, int lmax, double m, double z) {
  if (!(m > 0.0) || std::abs(z) == m) throw ArgumentError("interior channels need m > 0 and |z| != m");
  return channels(radius, lmax, Side::minus, Side::plus,
                  [&](int kappa) { return radial_interior(radius, z, m, kappa); });
}

ChannelOperator ps_exterior_channels(double radius, int lmax, double mass, double z) {
  if (!(std::abs(z) < mass)) throw ArgumentError("exterior channels need |z| < mass");
  return channels(radius, lmax, Side::plus, Side::minus,
                  [&](int kappa) { return radial_exterior(radius, z, mass, kappa); });
}

Eigen::VectorXcd apply_channels(const ChannelOperator& op, const SurfaceMesh& mesh, const Eigen::VectorXcd& field) {
  const SphereTransform sht(mesh);
  const int lmax = sht.degree();
  const Eigen::MatrixXcd c = sht.analyze_spinor(field);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(c.rows(), 4);
  for (int j2 = 1; j2 <= std::min(op.jmax2(), 2 * lmax + 1); j2 += 2) {
    const Eigen::Matrix4cd& block = op.blocks[static_cast<std::size_t>((j2 - 1) / 2)];
    const int kappas[2] = {-(j2 + 1) / 2, (j2 + 1) / 2};
    for (int mj2 = -j2; mj2 <= j2; mj2 += 2) {
      Eigen::Vector4cd x = Eigen::Vector4cd::Zero();
      Coupling cp[2];
      for (int s = 0; s < 2; ++s) {
        cp[s] = coupling(kappas[s], mj2);
        if (cp[s].l > lmax) continue;
        const int mu = (mj2 - 1) / 2, md = (mj2 + 1) / 2;
        for (int comp = 0; comp < 2; ++comp) {  // upper, lower
          cplx v = 0.0;
          if (std::abs(mu) <= cp[s].l) v += cp[s].a * c(sh_index(cp[s].l, mu), 2 * comp);
          if (std::abs(md) <= cp[s].l) v += cp[s].b * c(sh_index(cp[s].l, md), 2 * comp + 1);
          x[2 * comp + s] = v;
        }
      }
      const Eigen::Vector4cd y = block * x;
      for (int s = 0; s < 2; ++s) {
        if (cp[s].l > lmax) continue;
        const int mu = (mj2 - 1) / 2, md = (mj2 + 1) / 2;
        for (int comp = 0; comp < 2; ++comp) {
          if (std::abs(mu) <= cp[s].l) out(sh_index(cp[s].l, mu), 2 * comp) += cp[s].a * y[2 * comp + s];
          if (std::abs(md) <= cp[s].l) out(sh_index(cp[s].l, md), 2 * comp + 1) += cp[s].b * y[2 * comp + s];
        }
      }
    }
  }
  return sht.synthesize_spinor(out);
}

Spinor mit_eigenfunction(double radius, double m, int kappa, int mj2, double energy, const Vec3& x) {
  const Rule1D rule = gauss_legendre(64, 0.0, radius);
  double norm2 = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const RadialPair v = radial_interior(rule.nodes[q], energy, m, kappa);
    norm2 += rule.weights[q] * rule.nodes[q] * rule.nodes[q] * (v.g * v.g + v.f * v.f);
  }
  const double r = x.norm();
  const Vec3 dir = r > 0.0 ? Vec3(x / r) : Vec3::UnitZ();
  const RadialPair v = radial_interior(r, energy, m, kappa);
  const double scale = 1.0 / std::sqrt(norm2);
  Spinor out;
  out.head<2>() = scale * v.g * spinor_harmonic(kappa, mj2, dir);
  out.tail<2>() = scale * I_unit * v.f * spinor_harmonic(-kappa, mj2, dir);
  return out;
}

std::vector<TraceField> mit_eigentraces(const MeshRef& mesh, double m, int kappa, double energy) {
  if (!mesh || !mesh->sphere) throw CapabilityError("MIT eigentraces need a sphere mesh");
  const double radius = mesh->sphere->radius;
  std::vector<TraceField> out;
  const int j2 = 2 * std::abs(kappa) - 1;
  for (int mj2 = -j2; mj2 <= j2; mj2 += 2) {
    Eigen::VectorXcd v(4 * static_cast<Eigen::Index>(mesh->size()));
    for (std::size_t i = 0; i < mesh->size(); ++i) {
      v.segment<4>(4 * static_cast<Eigen::Index>(i)) =
          mit_eigenfunction(radius, m, kappa, mj2, energy, mesh->normals[i] * radius);
    }
    out.push_back({std::move(v), mesh});
  }
  return out;
}

MkjResult mkj_matrix(const MeshRef& mesh, const std::vector<TraceField>& traces) {
  if (!mesh || mesh->kind != MeshKind::sphere || !mesh->sphere) {
    throw CapabilityError("mkj_matrix quantizes spectrally and needs a sphere mesh");
  }
  if (traces.empty()) throw ArgumentError("mkj_matrix needs at least one eigentrace");
  const SurfaceMesh& s = *mesh;
  const SphereTransform sht(s);
  const int lmax = sht.degree();
  const double radius = s.sphere->radius;
  const SpinorMatrix beta = dirac_beta();
  const SpinorMatrix sx = spin_dot(Vec3::UnitX()), sy = spin_dot(Vec3::UnitY()), sz = spin_dot(Vec3::UnitZ());
  const Eigen::Index k = static_cast<Eigen::Index>(traces.size());
  std::vector<Eigen::VectorXcd> images;
  for (const TraceField& g : traces) {
    const Eigen::MatrixXcd c = sht.analyze_spinor(g.values);
    Eigen::MatrixXcd lp = Eigen::MatrixXcd::Zero(c.rows(), 4), lm = lp, lz = lp;
    for (int l = 0; l <= lmax; ++l) {
      for (int m = -l; m <= l; ++m) {
        const auto row = c.row(sh_index(l, m));
        lz.row(sh_index(l, m)) = static_cast<double>(m) * row;
        if (m < l) lp.row(sh_index(l, m + 1)) = sh_coefficient_norm(l, m) * row;
        if (m > -l) lm.row(sh_index(l, m - 1)) = sh_coefficient_norm(l, -m) * row;
      }
    }
    const Eigen::MatrixXcd lx = 0.5 * (lp + lm), ly = (lp - lm) / (2.0 * I_unit);
    // (-i grad u) ^ n = -(1/R) L u on the sphere of radius R
    const Eigen::MatrixXcd op = -(lx * sx.transpose() + ly * sy.transpose() + lz * sz.transpose()) / radius;
    images.push_back(nodewise_apply(s, [&](std::size_t) { return beta; }, sht.synthesize_spinor(op)));
  }
  MkjResult res;
  res.matrix.resize(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      cplx v = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        const Eigen::Index r = 4 * static_cast<Eigen::Index>(i);
        v += s.weights[i] * traces[static_cast<std::size_t>(b)].values.segment<4>(r).dot(images[a].segment<4>(r));
      }
      res.matrix(a, b) = 0.5 * v;
    }
  }
  const double scale = std::max(res.matrix.norm(), std::numeric_limits<double>::min());
  res.hermitian_defect = (res.matrix - res.matrix.adjoint()).norm() / scale;
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(res.matrix);
  res.mu.resize(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    res.mu[i] = es.eigenvalues()[i].real();
    res.max_imag = std::max(res.max_imag, std::abs(es.eigenvalues()[i].imag()));
  }
  std::sort(res.mu.begin(), res.mu.end());
  return res;
}

}  // namespace steklov
