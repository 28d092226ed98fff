#include "steklov/harmonics.hpp"

#include <gsl/gsl_sf_legendre.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> normalized_legendre(int lmax, double x) {
  std::vector<double> out(gsl_sf_legendre_array_n(static_cast<std::size_t>(lmax)));
  gsl_sf_legendre_array_e(GSL_SF_LEGENDRE_SPHARM, static_cast<std::size_t>(lmax), x, -1.0, out.data());
  return out;
}

double plm(const std::vector<double>& table, int l, int m) {
  return table[gsl_sf_legendre_array_index(static_cast<std::size_t>(l), static_cast<std::size_t>(m))];
}

}  // namespace

std::vector<cplx> spherical_harmonics(int lmax, const Vec3& dir) {
  const Vec3 u = dir.normalized();
  const auto table = normalized_legendre(lmax, std::clamp(u.z(), -1.0, 1.0));
  const double phi = std::atan2(u.y(), u.x());
  std::vector<cplx> out(sh_count(lmax));
  for (int m = 0; m <= lmax; ++m) {
    const cplx e = std::polar(1.0, m * phi);
    const double sign = (m % 2) ? -1.0 : 1.0;
    for (int l = m; l <= lmax; ++l) {
      const cplx y = plm(table, l, m) * e;
      out[sh_index(l, m)] = y;
      if (m > 0) out[sh_index(l, -m)] = sign * std::conj(y);
    }
  }
  return out;
}

std::vector<double> legendre_series(int lmax, double x) {
  std::vector<double> p(lmax + 1);
  p[0] = 1.0;
  if (lmax >= 1) p[1] = x;
  for (int l = 1; l < lmax; ++l) p[l + 1] = ((2 * l + 1) * x * p[l] - l * p[l - 1]) / (l + 1);
  return p;
}

double band_kernel(int lmax, double cos_angle, double radius) {
  // sum_{l<=L} (2l+1) P_l = (L+1)(P_L - P_{L+1}) / (1 - x), evaluated by recurrence to stay stable at x = 1
  double prev = 1.0, cur = cos_angle, sum = 1.0;
  if (lmax >= 1) sum += 3.0 * cur;
  for (int l = 1; l < lmax; ++l) {
    const double next = ((2 * l + 1) * cos_angle * cur - l * prev) / (l + 1);
    prev = cur;
    cur = next;
    sum += (2 * l + 3) * cur;
  }
  return sum / (4.0 * kPi * radius * radius);
}

SphereTransform::SphereTransform(const SurfaceMesh& mesh) {
  if (mesh.kind != MeshKind::sphere || !mesh.sphere) {
    throw CapabilityError("spectral transform needs a sphere mesh");
  }
  order_ = mesh.sphere->order;
  lmax_ = order_ - 1;
  radius_ = mesh.sphere->radius;
  const int nphi = 2 * order_;
  const double dphi = 2.0 * kPi / nphi;
  for (int t = 0; t < order_; ++t) {
    const double c = mesh.normals[static_cast<std::size_t>(t) * nphi].z();
    ring_weight_.push_back(mesh.weights[static_cast<std::size_t>(t) * nphi] / (radius_ * radius_ * dphi));
    ring_legendre_.push_back(normalized_legendre(lmax_, c));
  }
}

Eigen::VectorXcd SphereTransform::analyze(const Eigen::VectorXcd& nodal) const {
  const int nphi = 2 * order_;
  if (nodal.size() != static_cast<Eigen::Index>(order_) * nphi) throw ArgumentError("nodal field size mismatch");
  const double dphi = 2.0 * kPi / nphi;
  Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(sh_count(lmax_));
  std::vector<cplx> fourier(2 * lmax_ + 1);
  for (int t = 0; t < order_; ++t) {
    for (int m = -lmax_; m <= lmax_; ++m) {
      cplx s = 0.0;
      for (int k = 0; k < nphi; ++k) s += nodal[t * nphi + k] * std::polar(1.0, -m * k * dphi);
      fourier[m + lmax_] = s * dphi * ring_weight_[t];
    }
    for (int m = -lmax_; m <= lmax_; ++m) {
      const int am = std::abs(m);
      const double sign = (m < 0 && am % 2) ? -1.0 : 1.0;
      for (int l = am; l <= lmax_; ++l) coeffs[sh_index(l, m)] += sign * plm(ring_legendre_[t], l, am) * fourier[m + lmax_];
    }
  }
  return coeffs;
}

Eigen::VectorXcd SphereTransform::synthesize(const Eigen::VectorXcd& coeffs) const {
  if (coeffs.size() != sh_count(lmax_)) throw ArgumentError("coefficient vector size mismatch");
  const int nphi = 2 * order_;
  const double dphi = 2.0 * kPi / nphi;
  Eigen::VectorXcd nodal(static_cast<Eigen::Index>(order_) * nphi);
  std::vector<cplx> ring(2 * lmax_ + 1);
  for (int t = 0; t < order_; ++t) {
    for (int m = -lmax_; m <= lmax_; ++m) {
      const int am = std::abs(m);
      const double sign = (m < 0 && am % 2) ? -1.0 : 1.0;
      cplx s = 0.0;
      for (int l = am; l <= lmax_; ++l) s += sign * plm(ring_legendre_[t], l, am) * coeffs[sh_index(l, m)];
      ring[m + lmax_] = s;
    }
    for (int k = 0; k < nphi; ++k) {
      cplx s = 0.0;
      for (int m = -lmax_; m <= lmax_; ++m) s += ring[m + lmax_] * std::polar(1.0, m * k * dphi);
      nodal[t * nphi + k] = s;
    }
  }
  return nodal;
}

Eigen::MatrixXcd SphereTransform::analyze_spinor(const Eigen::VectorXcd& field) const {
  const Eigen::Index n = field.size() / 4;
  Eigen::MatrixXcd coeffs(sh_count(lmax_), 4);
  for (int a = 0; a < 4; ++a) {
    Eigen::VectorXcd comp(n);
    for (Eigen::Index i = 0; i < n; ++i) comp[i] = field[4 * i + a];
    coeffs.col(a) = analyze(comp);
  }
  return coeffs;
}

Eigen::VectorXcd SphereTransform::synthesize_spinor(const Eigen::MatrixXcd& coeffs) const {
  Eigen::VectorXcd field;
  for (int a = 0; a < 4; ++a) {
    const Eigen::VectorXcd comp = synthesize(coeffs.col(a));
    if (a == 0) field.resize(4 * comp.size());
    for (Eigen::Index i = 0; i < comp.size(); ++i) field[4 * i + a] = comp[i];
  }
  return field;
}

cplx evaluate_expansion(const Eigen::VectorXcd& coeffs, int lmax, const Vec3& dir) {
  const auto y = spherical_harmonics(lmax, dir);
  cplx s = 0.0;
  for (int i = 0; i < sh_count(lmax); ++i) s += coeffs[i] * y[i];
  return s;
}

Spinor evaluate_spinor_expansion(const Eigen::MatrixXcd& coeffs, int lmax, const Vec3& dir) {
  const auto y = spherical_harmonics(lmax, dir);
  Spinor s = Spinor::Zero();
  for (int i = 0; i < sh_count(lmax); ++i) s += y[i] * coeffs.row(i).transpose();
  return s;
}

}  // namespace steklov
